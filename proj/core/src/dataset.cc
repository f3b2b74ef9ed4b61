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

#include "ptmx/dataset.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>
#include <unordered_map>

#include "ptmx/errors.h"
#include "ptmx/hashing.h"
#include "ptmx/parallel.h"
#include "ptmx/text.h"

namespace ptmx {
namespace {

constexpr std::array<std::string_view, kNumSplits> kSplitNames = {"train", "val", "test"};

std::vector<std::string> OthersOf(const std::set<std::string> &proteins,
                                  const ProteinPair &pair) {
  std::vector<std::string> others;
  for (const std::string &p : proteins) {
    if (!pair.Contains(p)) others.push_back(p);
  }
  return others;
}

// Per-pmid outcome of the record pipeline, merged sequentially afterwards.
struct GroupResult {
  std::vector<LabeledSample> positives;
  std::vector<LabeledSample> negatives;
  std::set<InteractionType> source_classes;
  std::size_t missing_document = 0;
  std::size_t participant_missing = 0;
  std::size_t trigger_missing = 0;
  std::size_t conflicting_labels = 0;
  std::size_t unmapped_mentions = 0;
};

}  // namespace

std::string_view SplitName(Split s) { return kSplitNames[static_cast<int>(s)]; }

std::optional<Split> ParseSplitName(std::string_view name) {
  for (std::size_t i = 0; i < kNumSplits; ++i) {
    if (kSplitNames[i] == name) return static_cast<Split>(i);
  }
  return std::nullopt;
}

std::string LabeledSample::id() const {
  return pmid + ":" + pair.low() + ":" + pair.high();
}

std::vector<KbRecord> DedupRecords(std::span<const KbRecord> records) {
  std::set<std::tuple<std::string, std::string, std::string, InteractionType>> seen;
  std::vector<KbRecord> out;
  for (const KbRecord &r : records) {
    const auto &[lo, hi] = std::minmax(r.participant_a, r.participant_b);
    if (seen.emplace(r.pmid, lo, hi, r.interaction).second) out.push_back(r);
  }
  return out;
}

std::vector<KbRecord> DropSelfRelations(std::span<const KbRecord> records) {
  std::vector<KbRecord> out;
  for (const KbRecord &r : records) {
    if (r.participant_a != r.participant_b) out.push_back(r);
  }
  return out;
}

std::string_view NoiseDecisionName(NoiseDecision d) {
  switch (d) {
    case NoiseDecision::kKeep:
      return "keep";
    case NoiseDecision::kParticipantMissing:
      return "participant-missing";
    case NoiseDecision::kTriggerMissing:
      return "trigger-missing";
  }
  return "?";
}

NoiseDecision ReduceNoise(const KbRecord &record, const NormalizedAbstract &na,
                          const StemTable &stems) {
  if (!ContainsWholeWord(na.text, record.participant_a) ||
      !ContainsWholeWord(na.text, record.participant_b)) {
    return NoiseDecision::kParticipantMissing;
  }
  if (!stems.Mentions(record.interaction, na.text)) {
    return NoiseDecision::kTriggerMissing;
  }
  return NoiseDecision::kKeep;
}

std::vector<LabeledSample> GenerateNegatives(const NormalizedAbstract &na,
                                             const PairSet &annotated) {
  // A replacement glued to neighbouring word characters cannot be masked.
  std::set<std::string> present;
  for (const std::string &p : na.proteins) {
    if (ContainsWholeWord(na.text, p)) present.insert(p);
  }
  std::vector<LabeledSample> out;
  for (auto i = present.begin(); i != present.end(); ++i) {
    for (auto j = std::next(i); j != present.end(); ++j) {
      ProteinPair pair(*i, *j);
      if (annotated.count(pair)) continue;
      LabeledSample s;
      s.pmid = na.pmid;
      s.others = OthersOf(na.proteins, pair);
      s.pair = std::move(pair);
      s.label = InteractionType::kNegative;
      s.text = na.text;
      out.push_back(std::move(s));
    }
  }
  return out;
}

void ValidateRatios(const SplitRatios &ratios) {
  double sum = 0;
  for (double f : ratios.fractions) {
    if (!(f > 0)) throw ValidationError("split ratios must all be positive");
    sum += f;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw ValidationError("split ratios must sum to 1, got " + FormatDouble(sum));
  }
}

std::map<std::string, Split> AssignSplits(std::span<const LabeledSample> samples,
                                          const SplitRatios &ratios,
                                          std::uint64_t seed) {
  ValidateRatios(ratios);

  struct Doc {
    std::string pmid;
    std::array<double, kNumClasses> counts{};
    std::size_t positives = 0;
  };
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Doc> docs;
  std::array<double, kNumClasses> totals{};
  for (const LabeledSample &s : samples) {
    auto [it, inserted] = index.emplace(s.pmid, docs.size());
    if (inserted) docs.push_back(Doc{s.pmid, {}, 0});
    Doc &d = docs[it->second];
    d.counts[ClassIndex(s.label)] += 1;
    totals[ClassIndex(s.label)] += 1;
    if (IsPositive(s.label)) ++d.positives;
  }
  if (docs.size() < kNumSplits) {
    throw ValidationError("need at least 3 distinct pmids to split, got " +
                          std::to_string(docs.size()));
  }

  std::sort(docs.begin(), docs.end(), [](const Doc &a, const Doc &b) {
    if (a.positives != b.positives) return a.positives > b.positives;
    return NumericStringLess(a.pmid, b.pmid);
  });
  // The seed only reorders documents of equal priority.
  std::mt19937_64 rng(seed);
  for (std::size_t begin = 0; begin < docs.size();) {
    std::size_t end = begin;
    while (end < docs.size() && docs[end].positives == docs[begin].positives) ++end;
    std::vector<Doc> run(std::make_move_iterator(docs.begin() + begin),
                         std::make_move_iterator(docs.begin() + end));
    StableShuffle(run, rng);
    std::move(run.begin(), run.end(), docs.begin() + begin);
    begin = end;
  }

  std::array<std::array<double, kNumClasses>, kNumSplits> deficit{};
  for (std::size_t s = 0; s < kNumSplits; ++s) {
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      deficit[s][c] = ratios.fractions[s] * totals[c];
    }
  }

  // Remaining sample capacity per split. Only splits still below their total
  // target compete, which caps any overshoot at one document.
  std::array<double, kNumSplits> room{};
  for (std::size_t s = 0; s < kNumSplits; ++s) {
    for (std::size_t c = 0; c < kNumClasses; ++c) room[s] += deficit[s][c];
  }

  std::map<std::string, Split> out;
  for (const Doc &d : docs) {
    std::size_t best = kNumSplits;
    double best_score = 0;
    for (std::size_t s = 0; s < kNumSplits; ++s) {
      if (room[s] <= 0) continue;
      double score = 0;
      for (std::size_t c = 0; c < kNumClasses; ++c) score += d.counts[c] * deficit[s][c];
      if (best == kNumSplits || score > best_score) {
        best = s;
        best_score = score;
      }
    }
    if (best == kNumSplits) {
      // Only rounding can exhaust every split early.
      best = static_cast<std::size_t>(std::max_element(room.begin(), room.end()) - room.begin());
    }
    double size = 0;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      deficit[best][c] -= d.counts[c];
      size += d.counts[c];
    }
    room[best] -= size;
    out.emplace(d.pmid, static_cast<Split>(best));
  }
  return out;
}

Dataset BuildDataset(std::span<const KbRecord> records,
                     std::span<const Document> documents,
                     std::span<const GeneMention> mentions,
                     const GeneProteinMap &map, const BuildOptions &options) {
  Dataset result;
  BuildReport &report = result.report;
  report.records_in = records.size();

  std::vector<KbRecord> deduped = DedupRecords(records);
  report.duplicates_removed = records.size() - deduped.size();
  std::vector<KbRecord> clean = DropSelfRelations(deduped);
  report.self_relations_removed = deduped.size() - clean.size();

  std::unordered_map<std::string, const Document *> doc_by_pmid;
  for (const Document &d : documents) doc_by_pmid.emplace(d.pmid, &d);
  std::unordered_map<std::string, std::vector<GeneMention>> mentions_by_pmid;
  for (const GeneMention &m : mentions) mentions_by_pmid[m.pmid].push_back(m);

  std::vector<std::string> pmids;
  std::unordered_map<std::string, std::vector<const KbRecord *>> groups;
  for (const KbRecord &r : clean) {
    auto &group = groups[r.pmid];
    if (group.empty()) pmids.push_back(r.pmid);
    group.push_back(&r);
  }

  static const std::vector<GeneMention> kNoMentions;
  std::vector<GroupResult> results(pmids.size());
  ParallelFor(pmids.size(), options.jobs, [&](std::size_t g) {
    const std::string &pmid = pmids[g];
    const auto &group = groups.at(pmid);
    GroupResult &out = results[g];
    auto doc_it = doc_by_pmid.find(pmid);
    if (doc_it == doc_by_pmid.end()) {
      out.missing_document = group.size();
      return;
    }
    const Document &doc = *doc_it->second;
    auto m_it = mentions_by_pmid.find(pmid);
    const std::vector<GeneMention> &doc_mentions =
        m_it == mentions_by_pmid.end() ? kNoMentions : m_it->second;

    PairSet annotated;
    std::vector<std::string> annotated_accessions;
    for (const KbRecord *r : group) {
      annotated.insert(ProteinPair(r->participant_a, r->participant_b));
      for (const std::string *acc : {&r->participant_a, &r->participant_b}) {
        if (std::find(annotated_accessions.begin(), annotated_accessions.end(), *acc) ==
            annotated_accessions.end()) {
          annotated_accessions.push_back(*acc);
        }
      }
    }

    PairSet labelled;
    for (const KbRecord *r : group) {
      ProteinPair pair(r->participant_a, r->participant_b);
      NormalizedAbstract na = NormalizeDocument(doc, doc_mentions, map, pair);
      switch (ReduceNoise(*r, na, options.stems)) {
        case NoiseDecision::kParticipantMissing:
          ++out.participant_missing;
          continue;
        case NoiseDecision::kTriggerMissing:
          ++out.trigger_missing;
          continue;
        case NoiseDecision::kKeep:
          break;
      }
      if (!labelled.insert(pair).second) {
        ++out.conflicting_labels;
        continue;
      }
      LabeledSample s;
      s.pmid = pmid;
      s.others = OthersOf(na.proteins, pair);
      s.pair = std::move(pair);
      s.label = r->interaction;
      s.text = std::move(na.text);
      out.source_classes.insert(s.label);
      out.positives.push_back(std::move(s));
    }

    // Negatives come from one normalization that prefers every accession
    // annotated against this pmid.
    NormalizedAbstract reference =
        NormalizeDocument(doc, doc_mentions, map, annotated_accessions);
    out.unmapped_mentions = reference.skipped;
    if (!out.positives.empty()) out.negatives = GenerateNegatives(reference, annotated);
  });

  std::map<std::string, std::set<InteractionType>> source_classes;
  for (GroupResult &g : results) {
    report.missing_document += g.missing_document;
    report.participant_missing += g.participant_missing;
    report.trigger_missing += g.trigger_missing;
    report.conflicting_labels += g.conflicting_labels;
    report.unmapped_mentions += g.unmapped_mentions;
    if (!g.positives.empty()) {
      ++report.documents_used;
      source_classes[g.positives.front().pmid] = g.source_classes;
    }
    report.positives += g.positives.size();
    report.negatives += g.negatives.size();
    for (auto &s : g.positives) result.samples.push_back(std::move(s));
    for (auto &s : g.negatives) result.samples.push_back(std::move(s));
  }

  if (result.samples.empty()) return result;
  std::map<std::string, Split> splits;
  if (report.documents_used >= kNumSplits) {
    splits = AssignSplits(result.samples, options.ratios, options.seed);
  } else {
    // Too few documents to split; everything stays in train.
    ValidateRatios(options.ratios);
    report.unsplit_documents = report.documents_used;
  }
  for (LabeledSample &s : result.samples) {
    auto split_it = splits.find(s.pmid);
    s.split = split_it == splits.end() ? Split::kTrain : split_it->second;
    std::size_t split = static_cast<std::size_t>(s.split);
    ++report.per_split[split][ClassIndex(s.label)];
    if (!IsPositive(s.label)) {
      for (InteractionType t : source_classes[s.pmid]) {
        ++report.negatives_by_source_class[split][ClassIndex(t)];
      }
    }
  }
  return result;
}

}  // namespace ptmx
