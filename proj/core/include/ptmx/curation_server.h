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

#ifndef PTMX_CURATION_SERVER_H_
#define PTMX_CURATION_SERVER_H_

#include <memory>
#include <string>

#include "ptmx/curation.h"

namespace ptmx {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // Served under "/" when non-empty (the review UI bundle).
  std::string static_dir;
  unsigned threads = 8;
};

// HTTP JSON API over a CurationStore:
//   GET  /items?status=&ptm=&limit=
//   GET  /items/{id}
//   POST /items/{id}/verdict   {"decision","category","reviewer"}
//   GET  /report
//   POST /batches              {"per_ptm","seed"}
//   GET  /meta
// Errors are {"error": message} with 400 (validation), 404 (unknown item) or
// 409 (conflicting verdict).
class CurationServer {
 public:
  CurationServer(CurationStore &store, ServerOptions options);
  ~CurationServer();

  CurationServer(const CurationServer &) = delete;
  CurationServer &operator=(const CurationServer &) = delete;

  // Binds and starts serving on a background thread. Returns the bound port.
  // Throws Error when the address cannot be bound.
  int Start();
  // Blocks until Stop() is called.
  void Wait();
  void Stop();

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ptmx

#endif  // PTMX_CURATION_SERVER_H_
