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

#ifndef PTMX_CALIBRATION_H_
#define PTMX_CALIBRATION_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ptmx/interaction.h"
#include "ptmx/protein_pair.h"
#include "ptmx/scoring.h"

namespace ptmx {

// Ensemble prediction for one candidate pair.
struct PredictionRecord {
  std::string id;
  std::string pmid;
  ProteinPair pair;
  std::vector<ClassDistribution> per_model;
  ClassDistribution mean{};
  InteractionType pred = InteractionType::kNegative;
  double conf = 0;  // mean[pred]
  double std = 0;   // population std of per_model[*][pred]

  bool operator==(const PredictionRecord &) const = default;
};

// Mean over members, argmax with ties to the lowest class index, and the
// population standard deviation of the members' probability for the predicted
// class. Sums run over sorted values, so any permutation of the members gives
// bit-identical output. Throws ValidationError for a failed or empty output.
PredictionRecord Aggregate(const RawEnsembleOutput &raw);
PredictionRecord Aggregate(std::string id, std::string pmid, ProteinPair pair,
                           std::vector<ClassDistribution> per_model);

struct ConfidenceOutcome {
  double confidence = 0;
  bool correct = false;
};

struct CalibrationBin {
  double low = 0;
  double high = 0;
  std::size_t count = 0;
  double accuracy = 0;    // 0 for an empty bin
  double confidence = 0;  // 0 for an empty bin
};

struct CalibrationBins {
  std::size_t k = 0;
  std::vector<CalibrationBin> bins;
  double ece = 0;
  std::size_t n = 0;
};

inline constexpr std::size_t kDefaultBins = 10;

// 0-based bin of `confidence` among K bins ((k-1)/K, k/K]; 0 goes to bin 0.
std::size_t BinIndex(double confidence, std::size_t k);

// Throws ValidationError when `outcomes` is empty, k == 0 or a confidence lies
// outside [0, 1].
CalibrationBins ComputeEce(std::span<const ConfidenceOutcome> outcomes,
                           std::size_t k = kDefaultBins);

// Nearest-rank percentile: the ceil(p*n/100)-th smallest value (at least the
// first). p in (0, 100]. Throws ValidationError on an empty input.
double NearestRankPercentile(std::vector<double> values, double p);

struct ClassThresholds {
  double conf_cutoff = 0;
  double std_cutoff = 0;
  double min_conf = 0;
  double max_std = 0;
  std::size_t support = 0;  // training predictions behind the numbers

  bool operator==(const ClassThresholds &) const = default;
};

// Per positive class thresholds; absent classes never pass either filter.
struct ThresholdProfile {
  std::array<std::optional<ClassThresholds>, kNumClasses> classes;
  double percentile = 50;
  bool correct_only = false;

  const std::optional<ClassThresholds> &at(InteractionType t) const {
    return classes[ClassIndex(t)];
  }
  bool operator==(const ThresholdProfile &) const = default;
};

struct LearnOptions {
  double percentile = 50;
  // Learn only from predictions whose class matches the gold label.
  bool correct_only = false;
};

// Gold label per sample id.
using GoldLabels = std::unordered_map<std::string, InteractionType>;

// Groups predictions by predicted positive class and takes the nearest-rank
// percentile of confidences and stds, plus the group minimum confidence and
// maximum std. With correct_only, `gold` must label every prediction.
ThresholdProfile LearnThresholds(std::span<const PredictionRecord> train,
                                 const LearnOptions &options = {},
                                 const GoldLabels *gold = nullptr);

// Positive predicted class, conf > conf_cutoff and std < std_cutoff.
bool IsHighQuality(const PredictionRecord &p, const ThresholdProfile &profile);
// conf < min_conf and std > max_std of the predicted class.
bool IsLowQuality(const PredictionRecord &p, const ThresholdProfile &profile);

std::vector<PredictionRecord> FilterHighQuality(std::span<const PredictionRecord> preds,
                                                const ThresholdProfile &profile);
std::vector<PredictionRecord> PartitionLowQuality(std::span<const PredictionRecord> preds,
                                                  const ThresholdProfile &profile);

}  // namespace ptmx

#endif  // PTMX_CALIBRATION_H_
