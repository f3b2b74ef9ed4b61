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

#include "command_support.h"

#include <charconv>
#include <iterator>
#include <system_error>

#include "ptmx/errors.h"
#include "ptmx/hashing.h"
#include "ptmx/text.h"

namespace ptmx::cli {

std::ifstream OpenInput(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file " + path);
  return in;
}

OutputFile::OutputFile(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
  }
  tmp_ = path_;
  tmp_ += ".tmp";
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error("cannot write " + path_.string());
}

OutputFile::~OutputFile() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void OutputFile::Commit() {
  out_.flush();
  if (!out_) throw Error("error while writing " + path_.string());
  out_.close();
  std::filesystem::rename(tmp_, path_);
  committed_ = true;
}

void WriteHeader(std::ostream &out, const Provenance &prov) { out << prov.HeaderLine() << '\n'; }

void WriteJsonObject(const std::filesystem::path &path, const Provenance &prov,
                     const nlohmann::ordered_json &body) {
  nlohmann::ordered_json obj;
  obj["_header"] = prov.ToJson();
  for (auto it = body.begin(); it != body.end(); ++it) obj[it.key()] = it.value();
  OutputFile file(path);
  file.stream() << obj.dump(2) << '\n';
  file.Commit();
}

void EnsureNotInput(const std::vector<std::string> &inputs,
                    const std::vector<std::filesystem::path> &outputs) {
  for (const std::string &in : inputs) {
    if (in.empty()) continue;
    std::error_code ec;
    auto a = std::filesystem::weakly_canonical(in, ec);
    for (const auto &out : outputs) {
      if (out.empty()) continue;
      auto b = std::filesystem::weakly_canonical(out, ec);
      if (a == b) throw ValidationError("output " + out.string() + " would overwrite an input");
    }
  }
}

std::vector<double> ParseDoubleList(const std::string &text, const std::string &what) {
  std::vector<double> out;
  for (std::string_view part : SplitOn(text, ',')) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw ValidationError(what + ": '" + std::string(part) + "' is not a number");
    }
    out.push_back(v);
  }
  return out;
}

std::string ReadFile(const std::string &path) {
  std::ifstream in = OpenInput(path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

StemTable LoadStems(const std::string &path, std::string *digest) {
  if (path.empty()) {
    if (digest) *digest = "default";
    return StemTable::Default();
  }
  std::string content = ReadFile(path);
  if (digest) *digest = Hex64(Fnv1a64(content));
  return StemTable::Parse(content);
}

CLI::Option *AddJobs(CLI::App &app, unsigned &jobs) {
  return app.add_option("--jobs,-j", jobs, "Worker threads (0 = all cores)")
      ->capture_default_str();
}

}  // namespace ptmx::cli
