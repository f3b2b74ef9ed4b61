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

#ifndef PTMX_AGGREGATION_H_
#define PTMX_AGGREGATION_H_

#include <array>
#include <compare>
#include <cstddef>
#include <istream>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptmx/calibration.h"
#include "ptmx/interaction.h"

namespace ptmx {

// <low, ptm, high> with low < high. The pair is unordered, so (a, t, b) and
// (b, t, a) share one key.
struct TripletKey {
  std::string low;
  InteractionType ptm = InteractionType::kPhosphorylation;
  std::string high;

  auto operator<=>(const TripletKey &) const = default;
  bool operator==(const TripletKey &) const = default;
};

// Throws ValidationError when a == b, either is empty or ptm is negative.
TripletKey Canonicalize(std::string_view a, std::string_view b, InteractionType ptm);

struct Evidence {
  std::string pmid;
  double confidence = 0;
  double std = 0;

  bool operator==(const Evidence &) const = default;
};

struct TripletPrediction {
  TripletKey key;
  std::vector<Evidence> evidence;  // one entry per pmid, numeric pmid order
  std::size_t predictions = 0;     // records folded in, before pmid dedup

  std::size_t n_abstracts() const { return evidence.size(); }
  double max_conf() const;
  double min_std() const;
  bool operator==(const TripletPrediction &) const = default;
};

// Keyed reduction of positive predictions into triplets. Merging is
// associative and commutative, and the result does not depend on the order in
// which predictions arrive.
class TripletAccumulator {
 public:
  // Negative-class predictions are ignored.
  void Add(const PredictionRecord &p);
  void Add(const TripletKey &key, const Evidence &e, std::size_t predictions = 1);
  void Merge(const TripletAccumulator &other);

  // Sorted by key.
  std::vector<TripletPrediction> Triplets() const;
  std::size_t total_predictions() const;
  std::size_t unique_triplets() const { return entries_.size(); }

 private:
  struct Entry {
    std::map<std::string, Evidence> by_pmid;
    std::size_t predictions = 0;
  };
  std::map<TripletKey, Entry> entries_;
};

std::vector<TripletPrediction> AggregateTriplets(std::span<const PredictionRecord> preds);

// Per positive class: predictions folded in (All) and distinct triplets
// (Unique).
struct TripletCounts {
  std::array<std::size_t, kNumClasses> total{};
  std::array<std::size_t, kNumClasses> unique{};
  std::size_t grand_total() const;
  std::size_t grand_unique() const;
};

TripletCounts CountTriplets(std::span<const TripletPrediction> triplets);

// Triplets seen in at least `min_evidence` distinct abstracts. Throws
// ValidationError when min_evidence == 0.
std::vector<TripletPrediction> FilterMultiAbstract(std::span<const TripletPrediction> triplets,
                                                   std::size_t min_evidence);

struct ReferenceSet {
  std::set<TripletKey> keys;
  std::size_t rows = 0;
  std::size_t missing_accession = 0;
  std::size_t self_pairs = 0;
  std::size_t duplicates = 0;
};

// 3-column TSV: accession, ptm, accession. Rows with an empty or "-"
// accession or a self pair are dropped and counted; an unknown PTM name is a
// ParseError.
ReferenceSet ParseReference(std::istream &in, const std::string &source);

struct RecallRow {
  std::size_t found = 0;
  std::size_t reference_total = 0;
  double ratio = 0;
};

// Indexed by class; the negative slot stays zero. Repeated keys count once.
std::array<RecallRow, kNumClasses> RecallAgainstReference(
    std::span<const TripletKey> predicted, const std::set<TripletKey> &reference);
std::array<RecallRow, kNumClasses> RecallAgainstReference(
    std::span<const TripletPrediction> triplets, const std::set<TripletKey> &reference);

}  // namespace ptmx

#endif  // PTMX_AGGREGATION_H_
