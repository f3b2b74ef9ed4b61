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

#ifndef PTMX_TOOLS_CLI_COMMAND_SUPPORT_H_
#define PTMX_TOOLS_CLI_COMMAND_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ptmx/interaction.h"
#include "ptmx/provenance.h"

namespace ptmx::cli {

struct Streams {
  std::ostream &out;
  std::ostream &err;
};

// A parsed subcommand and the action that runs it.
struct Command {
  CLI::App *app = nullptr;
  std::function<void()> run;
};

using Registrar = Command (*)(CLI::App &root, Streams io);

Command AddBuildDataset(CLI::App &root, Streams io);
Command AddTransform(CLI::App &root, Streams io);
Command AddScore(CLI::App &root, Streams io);
Command AddCalibrate(CLI::App &root, Streams io);
Command AddLearnThresholds(CLI::App &root, Streams io);
Command AddFilter(CLI::App &root, Streams io);
Command AddEvaluate(CLI::App &root, Streams io);
Command AddAggregate(CLI::App &root, Streams io);
Command AddCompareReference(CLI::App &root, Streams io);
Command AddSampleReview(CLI::App &root, Streams io);
Command AddServe(CLI::App &root, Streams io);

// Opens an input file; throws ValidationError naming the path on failure.
std::ifstream OpenInput(const std::string &path);

// Output written to a temporary sibling and renamed into place by Commit(),
// so a failed run never leaves a partial file behind.
class OutputFile {
 public:
  explicit OutputFile(std::filesystem::path path);
  ~OutputFile();
  std::ostream &stream() { return out_; }
  void Commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

// Provenance header line of a line-oriented output.
void WriteHeader(std::ostream &out, const Provenance &prov);
// Single-object JSON output with a leading "_header" member.
void WriteJsonObject(const std::filesystem::path &path, const Provenance &prov,
                     const nlohmann::ordered_json &body);

// Throws ValidationError when an output path names one of the inputs.
void EnsureNotInput(const std::vector<std::string> &inputs,
                    const std::vector<std::filesystem::path> &outputs);

// Parses "a,b,c" into doubles.
std::vector<double> ParseDoubleList(const std::string &text, const std::string &what);

// Default stems when `path` is empty, else the parsed stem file. `digest`
// receives a hash of the table's source for provenance.
StemTable LoadStems(const std::string &path, std::string *digest);

// Reads a whole file.
std::string ReadFile(const std::string &path);

// Adds --jobs (0 = all cores).
CLI::Option *AddJobs(CLI::App &app, unsigned &jobs);

}  // namespace ptmx::cli

#endif  // PTMX_TOOLS_CLI_COMMAND_SUPPORT_H_
