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

#ifndef PTMX_EVALUATION_H_
#define PTMX_EVALUATION_H_

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptmx/calibration.h"
#include "ptmx/corpus_io.h"
#include "ptmx/interaction.h"

namespace ptmx {

// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  void Add(InteractionType truth, InteractionType predicted, std::size_t count = 1);
  std::size_t at(InteractionType truth, InteractionType predicted) const {
    return counts_[ClassIndex(truth)][ClassIndex(predicted)];
  }
  std::size_t total() const;
  std::size_t support(InteractionType truth) const;       // row sum
  std::size_t predicted(InteractionType predicted) const;  // column sum

  bool operator==(const ConfusionMatrix &) const = default;

 private:
  std::array<std::array<std::size_t, kNumClasses>, kNumClasses> counts_{};
};

ConfusionMatrix Confusion(std::span<const std::pair<InteractionType, InteractionType>> pairs);

struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// num / den with 0/0 = 0.
double SafeRatio(double num, double den);
double HarmonicF1(double precision, double recall);

struct ClassMetrics {
  InteractionType cls = InteractionType::kNegative;
  Prf prf;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t support = 0;
  std::size_t predicted = 0;
};

// Unweighted mean of per-class precision, recall and F1.
Prf MacroAverage(std::span<const Prf> per_class);
Prf MicroFromCounts(std::size_t tp, std::size_t fp, std::size_t fn);

struct PrfReport {
  // Positive classes with support > 0 or at least one prediction, in
  // canonical order.
  std::vector<ClassMetrics> classes;
  Prf macro;
  Prf micro;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t positive_support = 0;
};

PrfReport ComputePrf(const ConfusionMatrix &matrix);

// One scored sample joined with its gold label.
struct LabeledPrediction {
  InteractionType truth = InteractionType::kNegative;
  InteractionType pred = InteractionType::kNegative;
  double conf = 0;
  double std = 0;
};

// Pairs predictions with gold labels by sample id. Throws ValidationError when
// a prediction has no gold label; gold samples without a prediction are
// counted in `unmatched_gold`.
std::vector<LabeledPrediction> JoinGold(std::span<const PredictionRecord> preds,
                                        const GoldLabels &gold,
                                        std::size_t *unmatched_gold = nullptr);

struct GroupCalibration {
  std::size_t count = 0;
  double ece = 0;
  double mean_std = 0;
};

struct MetricsReport {
  ConfusionMatrix confusion;
  PrfReport prf;
  // Calibration of positive predictions grouped by predicted class and, for
  // comparison, by true class. Empty groups are absent.
  std::array<std::optional<GroupCalibration>, kNumClasses> by_predicted;
  std::array<std::optional<GroupCalibration>, kNumClasses> by_true;
  // Over every positive-class prediction.
  std::optional<CalibrationBins> overall;
  double average_std = 0;
  std::size_t positive_predictions = 0;
};

MetricsReport Evaluate(std::span<const LabeledPrediction> preds, std::size_t bins = kDefaultBins);

// Aligned text table with columns Interaction, P, R, F1, ECE, SD, Support;
// rates in percent.
std::string FormatMetricsTable(const MetricsReport &report);

// Lowercase alphanumeric unigram counts.
using TermCounts = std::map<std::string, std::size_t>;
TermCounts CountUnigrams(std::string_view text);

// Cosine similarity of two unigram count vectors; 0 if either is empty.
double CosineSimilarity(std::string_view a, std::string_view b);

struct SimilarityResult {
  std::string pmid;
  double max_similarity = 0;
  std::string nearest_train_pmid;  // empty when nothing overlaps
};

// For each eval document, the most similar train document by unigram-count
// cosine. Ties go to the earlier train document. Output follows `eval` order.
std::vector<SimilarityResult> NearestTrainSimilarity(std::span<const Document> eval,
                                                     std::span<const Document> train,
                                                     unsigned jobs = 1);

using StopwordSet = std::set<std::string, std::less<>>;

// The 50 function words shipped in data/stopwords.txt.
const StopwordSet &DefaultStopwords();
// One word per line, '#' comments and blank lines skipped, lowercased.
StopwordSet ParseStopwords(std::istream &in);

struct WordCount {
  std::string word;
  std::size_t count = 0;

  bool operator==(const WordCount &) const = default;
};

// Top-k unigrams over `docs` minus stopwords, by count then alphabetically.
std::vector<WordCount> CommonWords(std::span<const std::string> docs, std::size_t k,
                                   const StopwordSet &stopwords);

}  // namespace ptmx

#endif  // PTMX_EVALUATION_H_
