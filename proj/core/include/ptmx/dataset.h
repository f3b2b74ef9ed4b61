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

#ifndef PTMX_DATASET_H_
#define PTMX_DATASET_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "ptmx/corpus_io.h"
#include "ptmx/interaction.h"
#include "ptmx/normalization.h"
#include "ptmx/protein_pair.h"

namespace ptmx {

enum class Split : int { kTrain = 0, kVal = 1, kTest = 2 };
inline constexpr std::size_t kNumSplits = 3;
std::string_view SplitName(Split s);
std::optional<Split> ParseSplitName(std::string_view name);

struct LabeledSample {
  std::string pmid;
  ProteinPair pair;
  InteractionType label = InteractionType::kNegative;
  std::string text;                 // normalized abstract
  std::vector<std::string> others;  // other accessions in the abstract, sorted
  Split split = Split::kTrain;

  // pmid:low:high
  std::string id() const;

  bool operator==(const LabeledSample &) const = default;
};

using PairSet = std::unordered_set<ProteinPair, ProteinPairHash>;

// Collapses records equal in (pmid, unordered pair, interaction). First
// occurrence wins; order is otherwise preserved.
std::vector<KbRecord> DedupRecords(std::span<const KbRecord> records);

std::vector<KbRecord> DropSelfRelations(std::span<const KbRecord> records);

enum class NoiseDecision { kKeep, kParticipantMissing, kTriggerMissing };
std::string_view NoiseDecisionName(NoiseDecision d);

// Keeps a record only if both participants occur as whole words in the
// normalized text and one of the record's stems occurs case-insensitively.
NoiseDecision ReduceNoise(const KbRecord &record, const NormalizedAbstract &na,
                          const StemTable &stems);

// Every unordered pair of na.proteins not in `annotated`, sorted. Proteins
// that do not occur as whole words in na.text are left out.
std::vector<LabeledSample> GenerateNegatives(const NormalizedAbstract &na,
                                             const PairSet &annotated);

struct SplitRatios {
  std::array<double, kNumSplits> fractions = {0.7, 0.1, 0.2};
};

// Throws ValidationError unless every fraction is positive and they sum to
// 1 within 1e-9.
void ValidateRatios(const SplitRatios &ratios);

// Assigns one split per pmid. Documents are visited largest positive count
// first (ties in pmid order, then permuted by `seed`) and each goes to the
// split with the largest composition-weighted class deficit among splits still
// below their sample target. Throws
// ValidationError with fewer than three distinct pmids.
std::map<std::string, Split> AssignSplits(std::span<const LabeledSample> samples,
                                          const SplitRatios &ratios,
                                          std::uint64_t seed);

// Integer counters describing a build. Every field ends up in the JSON report.
struct BuildReport {
  std::size_t records_in = 0;
  std::size_t duplicates_removed = 0;
  std::size_t self_relations_removed = 0;
  std::size_t missing_document = 0;
  std::size_t participant_missing = 0;
  std::size_t trigger_missing = 0;
  std::size_t conflicting_labels = 0;
  std::size_t unmapped_mentions = 0;
  std::size_t documents_used = 0;
  // Documents left in train because fewer than three pmids survived.
  std::size_t unsplit_documents = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  // [split][class] sample counts; negatives under class index 0.
  std::array<std::array<std::size_t, kNumClasses>, kNumSplits> per_split{};
  // Negatives per split keyed by the positive class(es) of their abstract.
  std::array<std::array<std::size_t, kNumClasses>, kNumSplits>
      negatives_by_source_class{};

  bool operator==(const BuildReport &) const = default;
};

struct BuildOptions {
  SplitRatios ratios;
  std::uint64_t seed = 0;
  StemTable stems = StemTable::Default();
  unsigned jobs = 1;
};

struct Dataset {
  std::vector<LabeledSample> samples;
  BuildReport report;
};

// dedup -> drop self relations -> normalize per (pmid, kb pair) -> noise
// reduction -> negatives -> split.
Dataset BuildDataset(std::span<const KbRecord> records,
                     std::span<const Document> documents,
                     std::span<const GeneMention> mentions,
                     const GeneProteinMap &map, const BuildOptions &options);

}  // namespace ptmx

#endif  // PTMX_DATASET_H_
