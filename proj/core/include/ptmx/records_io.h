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

#ifndef PTMX_RECORDS_IO_H_
#define PTMX_RECORDS_IO_H_

#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ptmx/aggregation.h"
#include "ptmx/calibration.h"
#include "ptmx/dataset.h"
#include "ptmx/evaluation.h"
#include "ptmx/normalization.h"
#include "ptmx/scoring.h"
#include "ptmx/transform.h"

// Codecs for the pipeline's intermediate files. Line-oriented readers skip
// blank lines and '#' header lines and throw ParseError naming the source and
// line on any schema violation. Writers emit one record per line, LF-ended.
namespace ptmx {

// {"pmid","text","proteins":[...],"skipped":n}
void WriteNormalized(std::ostream &out, const NormalizedAbstract &na);
std::vector<NormalizedAbstract> ParseNormalized(std::istream &in, const std::string &source);

// {"pmid","a","b","label","split","text","others":[...]}
void WriteSample(std::ostream &out, const LabeledSample &sample);
std::vector<LabeledSample> ParseSamples(std::istream &in, const std::string &source);
GoldLabels GoldFromSamples(std::span<const LabeledSample> samples);

// {"id","pmid","a","b","text"}
void WriteTransformed(std::ostream &out, const TransformedInput &input);
std::vector<TransformedInput> ParseTransformed(std::istream &in, const std::string &source);

// {"id","pmid","a","b","per_model":[[7]...]} or, for a rejected input,
// {"id","pmid","a","b","failure":{"model":i,"error":"..."}}
void WriteRawOutput(std::ostream &out, const RawEnsembleOutput &raw);
std::vector<RawEnsembleOutput> ParseRawOutputs(std::istream &in, const std::string &source);

// {"id","pmid","a","b","per_model","mean","pred","conf","std"}
void WritePrediction(std::ostream &out, const PredictionRecord &p);
void ForEachPrediction(std::istream &in, const std::string &source,
                       const std::function<void(PredictionRecord &&)> &fn);
std::vector<PredictionRecord> ParsePredictions(std::istream &in, const std::string &source);

// Object keyed by positive class name; absent classes map to null. Options go
// under "_options". Keys starting with '_' are ignored when reading.
nlohmann::ordered_json ThresholdProfileToJson(const ThresholdProfile &profile);
ThresholdProfile ThresholdProfileFromJson(const nlohmann::json &json, const std::string &source);

// bin_low,bin_high,count,accuracy,confidence
void WriteBinsCsv(std::ostream &out, const CalibrationBins &bins);

nlohmann::ordered_json BuildReportToJson(const BuildReport &report);
nlohmann::ordered_json MetricsReportToJson(const MetricsReport &report);

// {"a","ptm","b","n_abstracts","pmids":[...],"max_conf","min_std"}
void WriteTriplet(std::ostream &out, const TripletPrediction &t);

struct TripletRow {
  TripletKey key;
  std::vector<std::string> pmids;
  double max_conf = 0;
  double min_std = 0;
};
std::vector<TripletRow> ParseTriplets(std::istream &in, const std::string &source);

// pmid,max_similarity,nearest_train_pmid
void WriteSimilarityCsv(std::ostream &out, std::span<const SimilarityResult> rows);
// class,rank,word,count
void WriteCommonWordsHeader(std::ostream &out);
void WriteCommonWordsRows(std::ostream &out, InteractionType cls,
                          std::span<const WordCount> words);

}  // namespace ptmx

#endif  // PTMX_RECORDS_IO_H_
