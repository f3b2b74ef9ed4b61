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

#include "ptmx/provenance.h"

#include "ptmx/hashing.h"

#ifndef PTMX_VERSION_STRING
#define PTMX_VERSION_STRING "0.0.0"
#endif

namespace ptmx {

std::string_view Version() { return PTMX_VERSION_STRING; }

std::string Provenance::ConfigHash() const { return Hex64(Fnv1a64(config.dump())); }

nlohmann::ordered_json Provenance::ToJson() const {
  nlohmann::ordered_json obj;
  obj["tool"] = "ptmx";
  obj["version"] = Version();
  obj["command"] = command;
  obj["seed"] = seed;
  obj["config"] = config;
  obj["config_hash"] = ConfigHash();
  return obj;
}

std::string Provenance::HeaderLine() const { return "#" + ToJson().dump(); }

std::optional<nlohmann::ordered_json> ParseHeaderLine(std::string_view line) {
  if (line.empty() || line[0] != '#') return std::nullopt;
  auto obj = nlohmann::ordered_json::parse(line.substr(1), nullptr, false);
  if (obj.is_discarded() || !obj.is_object() || !obj.contains("tool")) return std::nullopt;
  return obj;
}

}  // namespace ptmx
