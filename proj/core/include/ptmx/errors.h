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

#ifndef PTMX_ERRORS_H_
#define PTMX_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptmx {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data. Carries the source name and the
// 1-based line number when the error can be pinned to a line (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string &message);

  const std::string &source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Arguments or configuration that violate an operation's preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A gene id that has no entry in the gene-to-protein map.
class UnmappedGeneError : public Error {
 public:
  explicit UnmappedGeneError(const std::string &ncbi_id);
  const std::string &ncbi_id() const { return ncbi_id_; }

 private:
  std::string ncbi_id_;
};

// The scorer wire protocol was violated (bad ids, invalid distributions,
// transport failure or timeout). Retriable.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// An external scorer kept failing after all retries.
class ScorerError : public Error {
 public:
  ScorerError(int model, std::size_t batch, const std::string &cause);
  int model() const { return model_; }
  std::size_t batch() const { return batch_; }

 private:
  int model_;
  std::size_t batch_;
};

// Curation state errors.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

class ConflictError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptmx

#endif  // PTMX_ERRORS_H_
