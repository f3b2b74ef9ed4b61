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

#ifndef PTMX_PROTEIN_PAIR_H_
#define PTMX_PROTEIN_PAIR_H_

#include <compare>
#include <string>
#include <utility>

#include "ptmx/errors.h"

namespace ptmx {

// Unordered pair of distinct protein accessions, stored with low < high.
class ProteinPair {
 public:
  ProteinPair() = default;
  // Throws ValidationError when a == b.
  ProteinPair(std::string a, std::string b) {
    if (a == b) throw ValidationError("self pair " + a);
    if (b < a) std::swap(a, b);
    low_ = std::move(a);
    high_ = std::move(b);
  }

  const std::string &low() const { return low_; }
  const std::string &high() const { return high_; }

  bool Contains(const std::string &acc) const { return acc == low_ || acc == high_; }

  auto operator<=>(const ProteinPair &) const = default;
  bool operator==(const ProteinPair &) const = default;

 private:
  std::string low_;
  std::string high_;
};

struct ProteinPairHash {
  std::size_t operator()(const ProteinPair &p) const {
    std::size_t h = std::hash<std::string>()(p.low());
    return h * 31 + std::hash<std::string>()(p.high());
  }
};

}  // namespace ptmx

#endif  // PTMX_PROTEIN_PAIR_H_
