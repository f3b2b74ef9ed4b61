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

#include "ptmx/errors.h"

namespace ptmx {
namespace {

std::string Located(const std::string &source, std::size_t line,
                    const std::string &message) {
  std::string out = source.empty() ? std::string("<input>") : source;
  if (line > 0) out += ":" + std::to_string(line);
  return out + ": " + message;
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line,
                       const std::string &message)
    : Error(Located(source, line, message)),
      source_(std::move(source)),
      line_(line) {}

UnmappedGeneError::UnmappedGeneError(const std::string &ncbi_id)
    : Error("gene id " + ncbi_id + " has no protein accessions"),
      ncbi_id_(ncbi_id) {}

ScorerError::ScorerError(int model, std::size_t batch, const std::string &cause)
    : Error("scorer for model " + std::to_string(model) + " failed on batch " +
            std::to_string(batch) + ": " + cause),
      model_(model),
      batch_(batch) {}

}  // namespace ptmx
