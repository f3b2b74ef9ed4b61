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

#ifndef PTMX_PROVENANCE_H_
#define PTMX_PROVENANCE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace ptmx {

// Library version, e.g. "0.1.0".
std::string_view Version();

// Run metadata written at the top of every output. `config` holds the numeric
// and string knobs of the run, never file paths, so identical runs writing to
// different directories produce identical bytes.
struct Provenance {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();

  // 16 hex digits over the serialized config.
  std::string ConfigHash() const;
  // {"tool","version","command","seed","config","config_hash"}
  nlohmann::ordered_json ToJson() const;
  // '#' + ToJson().dump(), no newline. Line readers skip it as a comment.
  std::string HeaderLine() const;
};

// Parses a header line written by HeaderLine(); nullopt for other lines.
std::optional<nlohmann::ordered_json> ParseHeaderLine(std::string_view line);

}  // namespace ptmx

#endif  // PTMX_PROVENANCE_H_
