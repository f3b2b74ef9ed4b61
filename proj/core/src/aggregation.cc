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

#include "ptmx/aggregation.h"

#include <algorithm>

#include "ptmx/corpus_io.h"
#include "ptmx/errors.h"
#include "ptmx/text.h"

namespace ptmx {
namespace {

// Higher confidence wins, then lower std. Total over distinct values, so the
// kept entry does not depend on arrival order.
bool Better(const Evidence &a, const Evidence &b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  return a.std < b.std;
}

}  // namespace

TripletKey Canonicalize(std::string_view a, std::string_view b, InteractionType ptm) {
  if (a.empty() || b.empty()) throw ValidationError("triplet accession is empty");
  if (a == b) throw ValidationError("triplet needs two distinct proteins, got " + std::string(a));
  if (!IsPositive(ptm)) throw ValidationError("triplet PTM must be a positive class");
  if (b < a) std::swap(a, b);
  return TripletKey{std::string(a), ptm, std::string(b)};
}

double TripletPrediction::max_conf() const {
  double best = 0;
  for (const Evidence &e : evidence) best = std::max(best, e.confidence);
  return best;
}

double TripletPrediction::min_std() const {
  if (evidence.empty()) return 0;
  double best = evidence.front().std;
  for (const Evidence &e : evidence) best = std::min(best, e.std);
  return best;
}

void TripletAccumulator::Add(const PredictionRecord &p) {
  if (!IsPositive(p.pred)) return;
  Add(Canonicalize(p.pair.low(), p.pair.high(), p.pred), Evidence{p.pmid, p.conf, p.std});
}

void TripletAccumulator::Add(const TripletKey &key, const Evidence &e, std::size_t predictions) {
  Entry &entry = entries_[key];
  entry.predictions += predictions;
  auto [it, inserted] = entry.by_pmid.emplace(e.pmid, e);
  if (!inserted && Better(e, it->second)) it->second = e;
}

void TripletAccumulator::Merge(const TripletAccumulator &other) {
  for (const auto &[key, entry] : other.entries_) {
    bool first = true;
    for (const auto &[pmid, e] : entry.by_pmid) {
      Add(key, e, first ? entry.predictions : 0);
      first = false;
    }
  }
}

std::vector<TripletPrediction> TripletAccumulator::Triplets() const {
  std::vector<TripletPrediction> out;
  out.reserve(entries_.size());
  for (const auto &[key, entry] : entries_) {
    TripletPrediction t;
    t.key = key;
    t.predictions = entry.predictions;
    for (const auto &[pmid, e] : entry.by_pmid) t.evidence.push_back(e);
    std::sort(t.evidence.begin(), t.evidence.end(),
              [](const Evidence &a, const Evidence &b) { return NumericStringLess(a.pmid, b.pmid); });
    out.push_back(std::move(t));
  }
  return out;
}

std::size_t TripletAccumulator::total_predictions() const {
  std::size_t n = 0;
  for (const auto &[key, entry] : entries_) n += entry.predictions;
  return n;
}

std::vector<TripletPrediction> AggregateTriplets(std::span<const PredictionRecord> preds) {
  TripletAccumulator acc;
  for (const PredictionRecord &p : preds) acc.Add(p);
  return acc.Triplets();
}

std::size_t TripletCounts::grand_total() const {
  std::size_t n = 0;
  for (std::size_t v : total) n += v;
  return n;
}

std::size_t TripletCounts::grand_unique() const {
  std::size_t n = 0;
  for (std::size_t v : unique) n += v;
  return n;
}

TripletCounts CountTriplets(std::span<const TripletPrediction> triplets) {
  TripletCounts c;
  for (const TripletPrediction &t : triplets) {
    c.total[ClassIndex(t.key.ptm)] += t.predictions;
    c.unique[ClassIndex(t.key.ptm)] += 1;
  }
  return c;
}

std::vector<TripletPrediction> FilterMultiAbstract(std::span<const TripletPrediction> triplets,
                                                   std::size_t min_evidence) {
  if (min_evidence == 0) throw ValidationError("min_evidence must be at least 1");
  std::vector<TripletPrediction> out;
  for (const TripletPrediction &t : triplets) {
    if (t.n_abstracts() >= min_evidence) out.push_back(t);
  }
  return out;
}

ReferenceSet ParseReference(std::istream &in, const std::string &source) {
  ReferenceSet ref;
  LineReader reader(in, source);
  std::string line;
  while (reader.Next(line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto cols = SplitOn(line, '\t');
    if (cols.size() != 3) {
      reader.Fail("expected 3 tab-separated columns, got " + std::to_string(cols.size()));
    }
    ++ref.rows;
    auto ptm = ParsePositiveClassName(cols[1]);
    if (!ptm) {
      reader.Fail("unknown interaction '" + std::string(cols[1]) + "'; expected one of " +
                  PositiveClassNames());
    }
    auto missing = [](std::string_view s) { return s.empty() || s == "-"; };
    if (missing(cols[0]) || missing(cols[2])) {
      ++ref.missing_accession;
      continue;
    }
    if (cols[0] == cols[2]) {
      ++ref.self_pairs;
      continue;
    }
    if (!ref.keys.insert(Canonicalize(cols[0], cols[2], *ptm)).second) ++ref.duplicates;
  }
  return ref;
}

std::array<RecallRow, kNumClasses> RecallAgainstReference(
    std::span<const TripletKey> predicted, const std::set<TripletKey> &reference) {
  std::array<RecallRow, kNumClasses> rows{};
  for (const TripletKey &k : reference) ++rows[ClassIndex(k.ptm)].reference_total;
  std::set<TripletKey> seen;
  for (const TripletKey &k : predicted) {
    if (reference.contains(k) && seen.insert(k).second) ++rows[ClassIndex(k.ptm)].found;
  }
  for (RecallRow &r : rows) {
    r.ratio = r.reference_total == 0
                  ? 0.0
                  : static_cast<double>(r.found) / static_cast<double>(r.reference_total);
  }
  return rows;
}

std::array<RecallRow, kNumClasses> RecallAgainstReference(
    std::span<const TripletPrediction> triplets, const std::set<TripletKey> &reference) {
  std::vector<TripletKey> keys;
  keys.reserve(triplets.size());
  for (const TripletPrediction &t : triplets) keys.push_back(t.key);
  return RecallAgainstReference(std::span<const TripletKey>(keys), reference);
}

}  // namespace ptmx
