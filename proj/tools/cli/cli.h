// Copyright 2026 The ptmx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PTMX_TOOLS_CLI_CLI_H_
#define PTMX_TOOLS_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace ptmx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// Runs one subcommand. `args` excludes the program name. Returns 0 on success,
// 1 for invalid arguments or input data, 2 for runtime failures.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace ptmx::cli

#endif  // PTMX_TOOLS_CLI_CLI_H_
