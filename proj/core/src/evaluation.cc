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

#include "ptmx/evaluation.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <unordered_map>

#include "ptmx/errors.h"
#include "ptmx/parallel.h"
#include "ptmx/text.h"

namespace ptmx {

void ConfusionMatrix::Add(InteractionType truth, InteractionType predicted, std::size_t count) {
  counts_[ClassIndex(truth)][ClassIndex(predicted)] += count;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t n = 0;
  for (const auto &row : counts_) {
    for (std::size_t v : row) n += v;
  }
  return n;
}

std::size_t ConfusionMatrix::support(InteractionType truth) const {
  std::size_t n = 0;
  for (std::size_t v : counts_[ClassIndex(truth)]) n += v;
  return n;
}

std::size_t ConfusionMatrix::predicted(InteractionType predicted) const {
  std::size_t n = 0;
  for (const auto &row : counts_) n += row[ClassIndex(predicted)];
  return n;
}

ConfusionMatrix Confusion(std::span<const std::pair<InteractionType, InteractionType>> pairs) {
  ConfusionMatrix m;
  for (const auto &[truth, pred] : pairs) m.Add(truth, pred);
  return m;
}

double SafeRatio(double num, double den) { return den == 0 ? 0.0 : num / den; }

double HarmonicF1(double precision, double recall) {
  return SafeRatio(2 * precision * recall, precision + recall);
}

Prf MacroAverage(std::span<const Prf> per_class) {
  Prf out;
  if (per_class.empty()) return out;
  for (const Prf &p : per_class) {
    out.precision += p.precision;
    out.recall += p.recall;
    out.f1 += p.f1;
  }
  const double n = static_cast<double>(per_class.size());
  out.precision /= n;
  out.recall /= n;
  out.f1 /= n;
  return out;
}

Prf MicroFromCounts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Prf out;
  out.precision = SafeRatio(static_cast<double>(tp), static_cast<double>(tp + fp));
  out.recall = SafeRatio(static_cast<double>(tp), static_cast<double>(tp + fn));
  // 2TP / (2TP + FP + FN), identical to the harmonic mean of P and R.
  out.f1 = SafeRatio(2.0 * static_cast<double>(tp), static_cast<double>(2 * tp + fp + fn));
  return out;
}

PrfReport ComputePrf(const ConfusionMatrix &m) {
  PrfReport report;
  std::vector<Prf> per_class;
  for (InteractionType c : kPositiveClasses) {
    ClassMetrics cm;
    cm.cls = c;
    cm.tp = m.at(c, c);
    cm.support = m.support(c);
    cm.predicted = m.predicted(c);
    cm.fn = cm.support - cm.tp;
    cm.fp = cm.predicted - cm.tp;
    report.tp += cm.tp;
    report.fp += cm.fp;
    report.fn += cm.fn;
    report.positive_support += cm.support;
    if (cm.support == 0 && cm.predicted == 0) continue;
    cm.prf.precision = SafeRatio(static_cast<double>(cm.tp), static_cast<double>(cm.predicted));
    cm.prf.recall = SafeRatio(static_cast<double>(cm.tp), static_cast<double>(cm.support));
    cm.prf.f1 = HarmonicF1(cm.prf.precision, cm.prf.recall);
    per_class.push_back(cm.prf);
    report.classes.push_back(cm);
  }
  report.macro = MacroAverage(per_class);
  report.micro = MicroFromCounts(report.tp, report.fp, report.fn);
  return report;
}

std::vector<LabeledPrediction> JoinGold(std::span<const PredictionRecord> preds,
                                        const GoldLabels &gold, std::size_t *unmatched_gold) {
  std::vector<LabeledPrediction> out;
  out.reserve(preds.size());
  std::size_t matched = 0;
  for (const PredictionRecord &p : preds) {
    auto it = gold.find(p.id);
    if (it == gold.end()) throw ValidationError("no gold label for prediction " + p.id);
    ++matched;
    out.push_back({it->second, p.pred, p.conf, p.std});
  }
  if (unmatched_gold) *unmatched_gold = gold.size() - std::min(gold.size(), matched);
  return out;
}

namespace {

std::optional<GroupCalibration> Calibrate(const std::vector<ConfidenceOutcome> &outcomes,
                                          std::vector<double> stds, std::size_t bins) {
  if (outcomes.empty()) return std::nullopt;
  GroupCalibration g;
  g.count = outcomes.size();
  g.ece = ComputeEce(outcomes, bins).ece;
  std::sort(stds.begin(), stds.end());
  double sum = 0;
  for (double s : stds) sum += s;
  g.mean_std = sum / static_cast<double>(stds.size());
  return g;
}

}  // namespace

MetricsReport Evaluate(std::span<const LabeledPrediction> preds, std::size_t bins) {
  if (bins == 0) throw ValidationError("bin count must be at least 1");
  MetricsReport r;
  std::array<std::vector<ConfidenceOutcome>, kNumClasses> pred_groups, true_groups;
  std::array<std::vector<double>, kNumClasses> pred_stds, true_stds;
  std::vector<ConfidenceOutcome> all;
  std::vector<double> all_stds;
  for (const LabeledPrediction &p : preds) {
    r.confusion.Add(p.truth, p.pred);
    ConfidenceOutcome o{p.conf, p.truth == p.pred};
    if (IsPositive(p.pred)) {
      pred_groups[ClassIndex(p.pred)].push_back(o);
      pred_stds[ClassIndex(p.pred)].push_back(p.std);
      all.push_back(o);
      all_stds.push_back(p.std);
    }
    if (IsPositive(p.truth)) {
      true_groups[ClassIndex(p.truth)].push_back(o);
      true_stds[ClassIndex(p.truth)].push_back(p.std);
    }
  }
  r.prf = ComputePrf(r.confusion);
  for (InteractionType c : kPositiveClasses) {
    const std::size_t i = ClassIndex(c);
    r.by_predicted[i] = Calibrate(pred_groups[i], pred_stds[i], bins);
    r.by_true[i] = Calibrate(true_groups[i], true_stds[i], bins);
  }
  r.positive_predictions = all.size();
  if (!all.empty()) {
    r.overall = ComputeEce(all, bins);
    r.average_std = Calibrate(all, all_stds, bins)->mean_std;
  }
  return r;
}

namespace {

std::string Pad(std::string s, std::size_t width, bool left_align) {
  if (s.size() >= width) return s;
  std::string fill(width - s.size(), ' ');
  return left_align ? s + fill : fill + s;
}

std::string Percent(double v) { return FormatFixed(100.0 * v, 2); }

}  // namespace

std::string FormatMetricsTable(const MetricsReport &report) {
  constexpr std::size_t kName = 18, kCol = 8;
  std::ostringstream out;
  auto row = [&](const std::string &name, const std::string &p, const std::string &r,
                 const std::string &f1, const std::string &ece, const std::string &sd,
                 const std::string &support) {
    std::string line = Pad(name, kName, true);
    for (const std::string *cell : {&p, &r, &f1, &ece, &sd, &support}) {
      line += Pad(*cell, kCol, false);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  row("Interaction", "P", "R", "F1", "ECE", "SD", "Support");
  for (const ClassMetrics &cm : report.prf.classes) {
    const auto &g = report.by_predicted[ClassIndex(cm.cls)];
    std::string name(ClassName(cm.cls));
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    row(name, Percent(cm.prf.precision), Percent(cm.prf.recall), Percent(cm.prf.f1),
        g ? FormatFixed(g->ece, 4) : "-", g ? FormatFixed(g->mean_std, 4) : "-",
        std::to_string(cm.support));
  }
  const std::string n = std::to_string(report.positive_predictions);
  row("ECE", "", "", "", report.overall ? FormatFixed(report.overall->ece, 4) : "-", "", n);
  row("Average SD", "", "", "", "", report.overall ? FormatFixed(report.average_std, 4) : "-", n);
  const std::string support = std::to_string(report.prf.positive_support);
  row("Macro avg", Percent(report.prf.macro.precision), Percent(report.prf.macro.recall),
      Percent(report.prf.macro.f1), "", "", support);
  row("Micro avg", Percent(report.prf.micro.precision), Percent(report.prf.micro.recall),
      Percent(report.prf.micro.f1), "", "", support);
  return out.str();
}

TermCounts CountUnigrams(std::string_view text) {
  TermCounts counts;
  for (std::string &w : LowerUnigrams(text)) ++counts[std::move(w)];
  return counts;
}

namespace {

// Sparse count vector over a shared vocabulary.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;  // (term, count)
  std::uint64_t norm2 = 0;
};

double Cosine(std::uint64_t dot, std::uint64_t norm_a, std::uint64_t norm_b) {
  if (dot == 0 || norm_a == 0 || norm_b == 0) return 0.0;
  double sim = static_cast<double>(dot) /
               std::sqrt(static_cast<double>(norm_a) * static_cast<double>(norm_b));
  return std::min(sim, 1.0);
}

}  // namespace

double CosineSimilarity(std::string_view a, std::string_view b) {
  TermCounts ca = CountUnigrams(a), cb = CountUnigrams(b);
  std::uint64_t dot = 0, na = 0, nb = 0;
  for (const auto &[w, c] : ca) {
    na += c * c;
    auto it = cb.find(w);
    if (it != cb.end()) dot += c * it->second;
  }
  for (const auto &[w, c] : cb) nb += c * c;
  return Cosine(dot, na, nb);
}

std::vector<SimilarityResult> NearestTrainSimilarity(std::span<const Document> eval,
                                                     std::span<const Document> train,
                                                     unsigned jobs) {
  // Inverted index over the training documents.
  std::unordered_map<std::string, std::uint32_t> vocab;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> postings;
  std::vector<std::uint64_t> train_norm(train.size(), 0);
  for (std::size_t d = 0; d < train.size(); ++d) {
    for (const auto &[w, c] : CountUnigrams(train[d].text)) {
      auto [it, inserted] = vocab.emplace(w, static_cast<std::uint32_t>(postings.size()));
      if (inserted) postings.emplace_back();
      postings[it->second].emplace_back(static_cast<std::uint32_t>(d),
                                        static_cast<std::uint32_t>(c));
      train_norm[d] += static_cast<std::uint64_t>(c) * c;
    }
  }

  std::vector<SimilarityResult> out(eval.size());
  ParallelFor(eval.size(), jobs, [&](std::size_t e) {
    SimilarityResult &res = out[e];
    res.pmid = eval[e].pmid;
    std::unordered_map<std::uint32_t, std::uint64_t> dots;
    std::uint64_t norm = 0;
    for (const auto &[w, c] : CountUnigrams(eval[e].text)) {
      norm += static_cast<std::uint64_t>(c) * c;
      auto it = vocab.find(w);
      if (it == vocab.end()) continue;
      for (const auto &[d, tc] : postings[it->second]) dots[d] += static_cast<std::uint64_t>(c) * tc;
    }
    std::size_t best = train.size();
    for (const auto &[d, dot] : dots) {
      double sim = Cosine(dot, norm, train_norm[d]);
      if (sim > res.max_similarity || (sim == res.max_similarity && sim > 0 && d < best)) {
        res.max_similarity = sim;
        best = d;
      }
    }
    if (best < train.size()) res.nearest_train_pmid = train[best].pmid;
  });
  return out;
}

namespace {

// Keep in sync with core/data/stopwords.txt.
constexpr std::string_view kDefaultStopwords[] = {
    "a",    "about", "after", "all",   "also",  "an",    "and",   "are",  "as",   "at",
    "be",   "been",  "but",   "by",    "can",   "for",   "from",  "had",  "has",  "have",
    "in",   "into",  "is",    "it",    "its",   "may",   "more",  "no",   "not",  "of",
    "on",   "or",    "our",   "such",  "than",  "that",  "the",   "their", "these", "this",
    "to",   "was",   "we",    "were",  "which", "while", "with",  "within", "without", "both",
};

}  // namespace

const StopwordSet &DefaultStopwords() {
  static const StopwordSet words(std::begin(kDefaultStopwords), std::end(kDefaultStopwords));
  return words;
}

StopwordSet ParseStopwords(std::istream &in) {
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string_view> parts = SplitWhitespace(line);
    if (parts.empty() || parts[0][0] == '#') continue;
    words.insert(AsciiLower(parts[0]));
  }
  return words;
}

std::vector<WordCount> CommonWords(std::span<const std::string> docs, std::size_t k,
                                   const StopwordSet &stopwords) {
  if (k == 0) throw ValidationError("k must be at least 1");
  TermCounts counts;
  for (const std::string &d : docs) {
    for (std::string &w : LowerUnigrams(d)) {
      if (!stopwords.contains(w)) ++counts[std::move(w)];
    }
  }
  std::vector<WordCount> all;
  all.reserve(counts.size());
  for (auto &[w, c] : counts) all.push_back({w, c});
  auto cmp = [](const WordCount &a, const WordCount &b) {
    return a.count != b.count ? a.count > b.count : a.word < b.word;
  };
  const std::size_t take = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(), cmp);
  all.resize(take);
  return all;
}

}  // namespace ptmx
