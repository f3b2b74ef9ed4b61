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

#ifndef PTMX_TRANSFORM_H_
#define PTMX_TRANSFORM_H_

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ptmx/dataset.h"
#include "ptmx/normalization.h"
#include "ptmx/protein_pair.h"

namespace ptmx {

inline constexpr std::string_view kParticipantMarker1 = "PROTPART1";
inline constexpr std::string_view kParticipantMarker2 = "PROTPART2";
inline constexpr std::string_view kOtherMarkerPrefix = "PRTIG";

// Model input for one candidate pair.
struct TransformedInput {
  std::string id;  // pmid:low:high
  std::string pmid;
  ProteinPair pair;
  std::string text;

  bool operator==(const TransformedInput &) const = default;
};

std::string SampleId(const std::string &pmid, const ProteinPair &pair);

// Replaces whole-word occurrences of the pair with PROTPART1 (lower accession)
// and PROTPART2 (higher), and every other accession in `proteins` with
// PRTIG1..n numbered by first occurrence. Throws ValidationError when a pair
// member does not occur.
TransformedInput MaskParticipants(const std::string &pmid, std::string_view text,
                                  const std::set<std::string> &proteins,
                                  const ProteinPair &pair);

TransformedInput MaskParticipants(const NormalizedAbstract &na,
                                  const ProteinPair &pair);

// Masks the sample's own pair; proteins = pair + others.
TransformedInput MaskSample(const LabeledSample &sample);

using LengthFn = std::function<std::size_t(std::string_view)>;

std::size_t WhitespaceTokenCount(std::string_view text);

// Returns `text` when length_fn(text) <= budget, else the longest prefix
// ending at a whitespace-token boundary whose length is within budget.
// length_fn must be monotone over prefixes. Throws ValidationError when
// budget == 0.
std::string Truncate(std::string_view text, std::size_t budget,
                     const LengthFn &length_fn = WhitespaceTokenCount);

// All C(n, 2) pairs of na.proteins in lexicographic order.
std::vector<ProteinPair> EnumeratePairs(const std::set<std::string> &proteins);
std::vector<ProteinPair> EnumeratePairs(const NormalizedAbstract &na);

}  // namespace ptmx

#endif  // PTMX_TRANSFORM_H_
