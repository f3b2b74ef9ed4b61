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

#include "ptmx/calibration.h"

#include <algorithm>
#include <cmath>

#include "ptmx/errors.h"

namespace ptmx {
namespace {

double SortedSum(std::vector<double> &values) {
  std::sort(values.begin(), values.end());
  double sum = 0;
  for (double v : values) sum += v;
  return sum;
}

}  // namespace

PredictionRecord Aggregate(std::string id, std::string pmid, ProteinPair pair,
                           std::vector<ClassDistribution> per_model) {
  if (per_model.empty()) throw ValidationError("sample " + id + " has no model outputs");
  const double m = static_cast<double>(per_model.size());
  PredictionRecord rec;
  std::vector<double> column(per_model.size());
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    for (std::size_t i = 0; i < per_model.size(); ++i) column[i] = per_model[i][c];
    const double sum = SortedSum(column);
    // Sum then divide can drift off a constant column; keep it exact.
    rec.mean[c] = column.front() == column.back() ? column.front() : sum / m;
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c) {
    if (rec.mean[c] > rec.mean[best]) best = c;
  }
  rec.pred = ClassFromIndex(best);
  rec.conf = rec.mean[best];

  for (std::size_t i = 0; i < per_model.size(); ++i) column[i] = per_model[i][best];
  std::sort(column.begin(), column.end());
  std::vector<double> sq(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) {
    double d = column[i] - rec.conf;
    sq[i] = d * d;
  }
  rec.std = std::sqrt(SortedSum(sq) / m);

  rec.id = std::move(id);
  rec.pmid = std::move(pmid);
  rec.pair = std::move(pair);
  rec.per_model = std::move(per_model);
  return rec;
}

PredictionRecord Aggregate(const RawEnsembleOutput &raw) {
  if (raw.failure) {
    throw ValidationError("sample " + raw.id + " was rejected by model " +
                          std::to_string(raw.failure->model) + ": " + raw.failure->message);
  }
  return Aggregate(raw.id, raw.pmid, raw.pair, raw.per_model);
}

std::size_t BinIndex(double confidence, std::size_t k) {
  if (confidence <= 0) return 0;
  double scaled = confidence * static_cast<double>(k);
  auto bin = static_cast<std::size_t>(std::ceil(scaled));  // 1-based
  if (bin > k) bin = k;
  // Guard against rounding in the product: the bin's open lower edge.
  while (bin > 1 && confidence <= static_cast<double>(bin - 1) / static_cast<double>(k)) --bin;
  while (bin < k && confidence > static_cast<double>(bin) / static_cast<double>(k)) ++bin;
  return bin - 1;
}

CalibrationBins ComputeEce(std::span<const ConfidenceOutcome> outcomes, std::size_t k) {
  if (k == 0) throw ValidationError("bin count must be at least 1");
  if (outcomes.empty()) throw ValidationError("ECE needs at least one prediction");
  std::vector<ConfidenceOutcome> sorted(outcomes.begin(), outcomes.end());
  for (const ConfidenceOutcome &o : sorted) {
    if (!(o.confidence >= 0 && o.confidence <= 1)) {
      throw ValidationError("confidence outside [0, 1]");
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) {
    return a.confidence != b.confidence ? a.confidence < b.confidence : a.correct < b.correct;
  });

  CalibrationBins out;
  out.k = k;
  out.n = sorted.size();
  out.bins.resize(k);
  std::vector<double> conf_sum(k, 0.0);
  std::vector<std::size_t> correct(k, 0);
  for (const ConfidenceOutcome &o : sorted) {
    std::size_t b = BinIndex(o.confidence, k);
    ++out.bins[b].count;
    conf_sum[b] += o.confidence;
    if (o.correct) ++correct[b];
  }
  const double n = static_cast<double>(out.n);
  for (std::size_t b = 0; b < k; ++b) {
    CalibrationBin &bin = out.bins[b];
    bin.low = static_cast<double>(b) / static_cast<double>(k);
    bin.high = static_cast<double>(b + 1) / static_cast<double>(k);
    if (bin.count == 0) continue;
    const double cnt = static_cast<double>(bin.count);
    bin.accuracy = static_cast<double>(correct[b]) / cnt;
    bin.confidence = conf_sum[b] / cnt;
    out.ece += cnt / n * std::fabs(bin.accuracy - bin.confidence);
  }
  return out;
}

double NearestRankPercentile(std::vector<double> values, double p) {
  if (values.empty()) throw ValidationError("percentile of an empty set");
  if (!(p > 0 && p <= 100)) throw ValidationError("percentile must be in (0, 100]");
  std::sort(values.begin(), values.end());
  double rank = std::ceil(p * static_cast<double>(values.size()) / 100.0);
  std::size_t r = rank < 1 ? 1 : static_cast<std::size_t>(rank);
  if (r > values.size()) r = values.size();
  return values[r - 1];
}

ThresholdProfile LearnThresholds(std::span<const PredictionRecord> train,
                                 const LearnOptions &options, const GoldLabels *gold) {
  if (!(options.percentile > 0 && options.percentile <= 100)) {
    throw ValidationError("percentile must be in (0, 100]");
  }
  if (options.correct_only && gold == nullptr) {
    throw ValidationError("correct-only thresholds need gold labels");
  }
  std::array<std::vector<double>, kNumClasses> confs, stds;
  for (const PredictionRecord &p : train) {
    if (!IsPositive(p.pred)) continue;
    if (options.correct_only) {
      auto it = gold->find(p.id);
      if (it == gold->end()) throw ValidationError("no gold label for " + p.id);
      if (it->second != p.pred) continue;
    }
    confs[ClassIndex(p.pred)].push_back(p.conf);
    stds[ClassIndex(p.pred)].push_back(p.std);
  }
  ThresholdProfile profile;
  profile.percentile = options.percentile;
  profile.correct_only = options.correct_only;
  for (InteractionType t : kPositiveClasses) {
    const std::size_t c = ClassIndex(t);
    if (confs[c].empty()) continue;
    ClassThresholds th;
    th.support = confs[c].size();
    th.min_conf = *std::min_element(confs[c].begin(), confs[c].end());
    th.max_std = *std::max_element(stds[c].begin(), stds[c].end());
    th.conf_cutoff = NearestRankPercentile(std::move(confs[c]), options.percentile);
    th.std_cutoff = NearestRankPercentile(std::move(stds[c]), options.percentile);
    profile.classes[c] = th;
  }
  return profile;
}

bool IsHighQuality(const PredictionRecord &p, const ThresholdProfile &profile) {
  if (!IsPositive(p.pred)) return false;
  const auto &th = profile.at(p.pred);
  return th && p.conf > th->conf_cutoff && p.std < th->std_cutoff;
}

bool IsLowQuality(const PredictionRecord &p, const ThresholdProfile &profile) {
  if (!IsPositive(p.pred)) return false;
  const auto &th = profile.at(p.pred);
  return th && p.conf < th->min_conf && p.std > th->max_std;
}

std::vector<PredictionRecord> FilterHighQuality(std::span<const PredictionRecord> preds,
                                                const ThresholdProfile &profile) {
  std::vector<PredictionRecord> out;
  for (const PredictionRecord &p : preds) {
    if (IsHighQuality(p, profile)) out.push_back(p);
  }
  return out;
}

std::vector<PredictionRecord> PartitionLowQuality(std::span<const PredictionRecord> preds,
                                                  const ThresholdProfile &profile) {
  std::vector<PredictionRecord> out;
  for (const PredictionRecord &p : preds) {
    if (IsLowQuality(p, profile)) out.push_back(p);
  }
  return out;
}

}  // namespace ptmx
