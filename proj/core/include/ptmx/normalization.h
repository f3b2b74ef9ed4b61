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

#ifndef PTMX_NORMALIZATION_H_
#define PTMX_NORMALIZATION_H_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ptmx/corpus_io.h"
#include "ptmx/protein_pair.h"

namespace ptmx {

// One applied replacement. Offsets refer to the ORIGINAL text, in scalars.
struct MentionReplacement {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string accession;

  bool operator==(const MentionReplacement &) const = default;
};

// An abstract whose gene mentions were rewritten to protein accessions.
struct NormalizedAbstract {
  std::string pmid;
  std::string text;
  std::set<std::string> proteins;  // accessions introduced by replacement
  std::vector<MentionReplacement> mention_map;  // in text order
  std::size_t skipped = 0;                      // unmapped mentions kept as-is

  bool operator==(const NormalizedAbstract &) const = default;
};

// Chooses the accession for a gene. If any preferred accession appears in the
// gene's list, the one earliest in that list wins; otherwise the first
// accession of the list. Throws UnmappedGeneError for unknown genes.
std::string MapMention(const std::string &ncbi_id, const GeneProteinMap &map,
                       std::span<const std::string> preferred);

// Knowledge-base pair form used during dataset construction.
std::string MapMention(const std::string &ncbi_id, const GeneProteinMap &map,
                       const std::optional<ProteinPair> &kb_pair);

// Rewrites every mention of `doc` (mentions for other pmids are an error). The
// accession is chosen once per gene id. Unmapped genes keep their surface and
// count as skipped. Throws ValidationError on out-of-bounds, overlapping or
// surface-mismatched spans.
NormalizedAbstract NormalizeDocument(const Document &doc,
                                     std::span<const GeneMention> mentions,
                                     const GeneProteinMap &map,
                                     std::span<const std::string> preferred);

NormalizedAbstract NormalizeDocument(const Document &doc,
                                     std::span<const GeneMention> mentions,
                                     const GeneProteinMap &map,
                                     const std::optional<ProteinPair> &kb_pair);

}  // namespace ptmx

#endif  // PTMX_NORMALIZATION_H_
