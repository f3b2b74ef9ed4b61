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

#include "ptmx/records_io.h"

#include "ptmx/errors.h"
#include "ptmx/text.h"

namespace ptmx {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Field access with errors pinned to the reader's current line.
class Fields {
 public:
  Fields(const LineReader &reader, const json &obj) : reader_(reader), obj_(obj) {
    if (!obj.is_object()) reader.Fail("expected a JSON object");
  }

  const json &Get(const char *key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) reader_.Fail(std::string("missing field \"") + key + "\"");
    return *it;
  }
  bool Has(const char *key) const { return obj_.contains(key); }

  std::string String(const char *key) const {
    const json &v = Get(key);
    if (!v.is_string()) reader_.Fail(std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
  }
  double Number(const char *key) const {
    const json &v = Get(key);
    if (!v.is_number()) reader_.Fail(std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
  }
  std::size_t Count(const char *key) const {
    const json &v = Get(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      reader_.Fail(std::string("field \"") + key + "\" must be a non-negative integer");
    }
    return v.get<std::size_t>();
  }
  std::vector<std::string> Strings(const char *key) const {
    const json &v = Get(key);
    if (!v.is_array()) reader_.Fail(std::string("field \"") + key + "\" must be an array");
    std::vector<std::string> out;
    for (const json &e : v) {
      if (!e.is_string()) reader_.Fail(std::string("field \"") + key + "\" must hold strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }
  ProteinPair Pair() const {
    std::string a = String("a"), b = String("b");
    if (a.empty() || b.empty()) reader_.Fail("empty accession");
    if (a == b) reader_.Fail("self pair " + a);
    return ProteinPair(a, b);
  }
  InteractionType Class(const char *key) const {
    std::string name = String(key);
    auto c = ParseClassName(name);
    if (!c) reader_.Fail("unknown class '" + name + "'");
    return *c;
  }
  ClassDistribution Distribution(const json &v, const std::string &what) const {
    if (!v.is_array() || v.size() != kNumClasses) reader_.Fail(what + " must hold 7 numbers");
    ClassDistribution d{};
    for (std::size_t i = 0; i < kNumClasses; ++i) {
      if (!v[i].is_number()) reader_.Fail(what + " must hold 7 numbers");
      d[i] = v[i].get<double>();
    }
    if (!IsValidDistribution(d)) reader_.Fail(what + " is not a valid distribution");
    return d;
  }
  std::vector<ClassDistribution> PerModel() const {
    const json &v = Get("per_model");
    if (!v.is_array() || v.empty()) reader_.Fail("per_model must be a non-empty array");
    std::vector<ClassDistribution> out;
    for (const json &d : v) out.push_back(Distribution(d, "per_model entry"));
    return out;
  }

 private:
  const LineReader &reader_;
  const json &obj_;
};

void ForEachJsonLine(std::istream &in, const std::string &source,
                     const std::function<void(const LineReader &, const json &)> &fn) {
  LineReader reader(in, source);
  std::string line;
  while (reader.Next(line)) {
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error &e) {
      reader.Fail(std::string("malformed JSON: ") + e.what());
    }
    try {
      fn(reader, obj);
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      reader.Fail(e.what());
    } catch (const json::exception &e) {
      reader.Fail(e.what());
    }
  }
}

void WriteLine(std::ostream &out, const ordered_json &obj) { out << obj.dump() << '\n'; }

ordered_json ClassCounts(const std::array<std::size_t, kNumClasses> &counts) {
  ordered_json obj = ordered_json::object();
  for (InteractionType t : kAllClasses) obj[std::string(ClassName(t))] = counts[ClassIndex(t)];
  return obj;
}

ordered_json SplitTable(
    const std::array<std::array<std::size_t, kNumClasses>, kNumSplits> &table) {
  ordered_json obj = ordered_json::object();
  for (std::size_t s = 0; s < kNumSplits; ++s) {
    obj[std::string(SplitName(static_cast<Split>(s)))] = ClassCounts(table[s]);
  }
  return obj;
}

ordered_json PrfJson(const Prf &p) {
  ordered_json obj;
  obj["precision"] = p.precision;
  obj["recall"] = p.recall;
  obj["f1"] = p.f1;
  return obj;
}

ordered_json GroupJson(const std::array<std::optional<GroupCalibration>, kNumClasses> &groups) {
  ordered_json obj = ordered_json::object();
  for (InteractionType t : kPositiveClasses) {
    const auto &g = groups[ClassIndex(t)];
    if (!g) continue;
    ordered_json e;
    e["count"] = g->count;
    e["ece"] = g->ece;
    e["mean_std"] = g->mean_std;
    obj[std::string(ClassName(t))] = e;
  }
  return obj;
}

}  // namespace

void WriteNormalized(std::ostream &out, const NormalizedAbstract &na) {
  ordered_json obj;
  obj["pmid"] = na.pmid;
  obj["text"] = na.text;
  obj["proteins"] = na.proteins;
  obj["skipped"] = na.skipped;
  WriteLine(out, obj);
}

std::vector<NormalizedAbstract> ParseNormalized(std::istream &in, const std::string &source) {
  std::vector<NormalizedAbstract> out;
  ForEachJsonLine(in, source, [&](const LineReader &reader, const json &obj) {
    Fields f(reader, obj);
    NormalizedAbstract na;
    na.pmid = f.String("pmid");
    if (!IsDigits(na.pmid)) reader.Fail("pmid must be decimal digits");
    na.text = f.String("text");
    for (std::string &p : f.Strings("proteins")) na.proteins.insert(std::move(p));
    na.skipped = f.Count("skipped");
    out.push_back(std::move(na));
  });
  return out;
}

void WriteSample(std::ostream &out, const LabeledSample &s) {
  ordered_json obj;
  obj["pmid"] = s.pmid;
  obj["a"] = s.pair.low();
  obj["b"] = s.pair.high();
  obj["label"] = ClassName(s.label);
  obj["split"] = SplitName(s.split);
  obj["text"] = s.text;
  obj["others"] = s.others;
  WriteLine(out, obj);
}

std::vector<LabeledSample> ParseSamples(std::istream &in, const std::string &source) {
  std::vector<LabeledSample> out;
  ForEachJsonLine(in, source, [&](const LineReader &reader, const json &obj) {
    Fields f(reader, obj);
    LabeledSample s;
    s.pmid = f.String("pmid");
    if (!IsDigits(s.pmid)) reader.Fail("pmid must be decimal digits");
    s.pair = f.Pair();
    s.label = f.Class("label");
    std::string split = f.String("split");
    auto sp = ParseSplitName(split);
    if (!sp) reader.Fail("unknown split '" + split + "'");
    s.split = *sp;
    s.text = f.String("text");
    s.others = f.Strings("others");
    out.push_back(std::move(s));
  });
  return out;
}

GoldLabels GoldFromSamples(std::span<const LabeledSample> samples) {
  GoldLabels gold;
  for (const LabeledSample &s : samples) {
    if (!gold.emplace(s.id(), s.label).second) {
      throw ValidationError("duplicate gold sample " + s.id());
    }
  }
  return gold;
}

void WriteTransformed(std::ostream &out, const TransformedInput &t) {
  ordered_json obj;
  obj["id"] = t.id;
  obj["pmid"] = t.pmid;
  obj["a"] = t.pair.low();
  obj["b"] = t.pair.high();
  obj["text"] = t.text;
  WriteLine(out, obj);
}

std::vector<TransformedInput> ParseTransformed(std::istream &in, const std::string &source) {
  std::vector<TransformedInput> out;
  ForEachJsonLine(in, source, [&](const LineReader &reader, const json &obj) {
    Fields f(reader, obj);
    TransformedInput t;
    t.id = f.String("id");
    t.pmid = f.String("pmid");
    t.pair = f.Pair();
    t.text = f.String("text");
    if (t.id.empty()) reader.Fail("empty id");
    out.push_back(std::move(t));
  });
  return out;
}

void WriteRawOutput(std::ostream &out, const RawEnsembleOutput &raw) {
  ordered_json obj;
  obj["id"] = raw.id;
  obj["pmid"] = raw.pmid;
  obj["a"] = raw.pair.low();
  obj["b"] = raw.pair.high();
  if (raw.failure) {
    ordered_json f;
    f["model"] = raw.failure->model;
    f["error"] = raw.failure->message;
    obj["failure"] = f;
  } else {
    obj["per_model"] = raw.per_model;
  }
  WriteLine(out, obj);
}

std::vector<RawEnsembleOutput> ParseRawOutputs(std::istream &in, const std::string &source) {
  std::vector<RawEnsembleOutput> out;
  ForEachJsonLine(in, source, [&](const LineReader &reader, const json &obj) {
    Fields f(reader, obj);
    RawEnsembleOutput raw;
    raw.id = f.String("id");
    raw.pmid = f.String("pmid");
    raw.pair = f.Pair();
    if (f.Has("failure")) {
      const json &fj = f.Get("failure");
      Fields ff(reader, fj);
      raw.failure = EnsembleFailure{static_cast<int>(ff.Count("model")), ff.String("error")};
    } else {
      raw.per_model = f.PerModel();
    }
    out.push_back(std::move(raw));
  });
  return out;
}

void WritePrediction(std::ostream &out, const PredictionRecord &p) {
  ordered_json obj;
  obj["id"] = p.id;
  obj["pmid"] = p.pmid;
  obj["a"] = p.pair.low();
  obj["b"] = p.pair.high();
  obj["per_model"] = p.per_model;
  obj["mean"] = p.mean;
  obj["pred"] = ClassName(p.pred);
  obj["conf"] = p.conf;
  obj["std"] = p.std;
  WriteLine(out, obj);
}

void ForEachPrediction(std::istream &in, const std::string &source,
                       const std::function<void(PredictionRecord &&)> &fn) {
  ForEachJsonLine(in, source, [&](const LineReader &reader, const json &obj) {
    Fields f(reader, obj);
    PredictionRecord p;
    p.id = f.String("id");
    p.pmid = f.String("pmid");
    p.pair = f.Pair();
    p.per_model = f.PerModel();
    p.mean = f.Distribution(f.Get("mean"), "mean");
    p.pred = f.Class("pred");
    p.conf = f.Number("conf");
    p.std = f.Number("std");
    fn(std::move(p));
  });
}

std::vector<PredictionRecord> ParsePredictions(std::istream &in, const std::string &source) {
  std::vector<PredictionRecord> out;
  ForEachPrediction(in, source, [&](PredictionRecord &&p) { out.push_back(std::move(p)); });
  return out;
}

ordered_json ThresholdProfileToJson(const ThresholdProfile &profile) {
  ordered_json obj;
  ordered_json options;
  options["percentile"] = profile.percentile;
  options["correct_only"] = profile.correct_only;
  obj["_options"] = options;
  for (InteractionType t : kPositiveClasses) {
    const auto &th = profile.at(t);
    ordered_json e = nullptr;
    if (th) {
      e = ordered_json::object();
      e["conf_cutoff"] = th->conf_cutoff;
      e["std_cutoff"] = th->std_cutoff;
      e["min_conf"] = th->min_conf;
      e["max_std"] = th->max_std;
      e["support"] = th->support;
    }
    obj[std::string(ClassName(t))] = e;
  }
  return obj;
}

ThresholdProfile ThresholdProfileFromJson(const json &obj, const std::string &source) {
  auto fail = [&](const std::string &msg) -> void { throw ParseError(source, 0, msg); };
  if (!obj.is_object()) fail("threshold profile must be a JSON object");
  ThresholdProfile profile;
  if (auto it = obj.find("_options"); it != obj.end() && it->is_object()) {
    profile.percentile = it->value("percentile", 50.0);
    profile.correct_only = it->value("correct_only", false);
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!it.key().empty() && it.key()[0] == '_') continue;
    auto cls = ParsePositiveClassName(it.key());
    if (!cls) fail("unknown class '" + it.key() + "'");
    if (it->is_null()) continue;
    if (!it->is_object()) fail("thresholds for " + it.key() + " must be an object or null");
    ClassThresholds th;
    auto num = [&](const char *k) {
      auto v = it->find(k);
      if (v == it->end() || !v->is_number()) {
        fail(it.key() + ": missing number \"" + k + "\"");
      }
      double d = v->get<double>();
      if (!(d >= 0 && d <= 1)) fail(it.key() + ": \"" + k + "\" outside [0, 1]");
      return d;
    };
    th.conf_cutoff = num("conf_cutoff");
    th.std_cutoff = num("std_cutoff");
    th.min_conf = num("min_conf");
    th.max_std = num("max_std");
    th.support = it->value("support", std::size_t{0});
    profile.classes[ClassIndex(*cls)] = th;
  }
  return profile;
}

void WriteBinsCsv(std::ostream &out, const CalibrationBins &bins) {
  out << "bin_low,bin_high,count,accuracy,confidence\n";
  for (const CalibrationBin &b : bins.bins) {
    out << FormatDouble(b.low) << ',' << FormatDouble(b.high) << ',' << b.count << ','
        << FormatDouble(b.accuracy) << ',' << FormatDouble(b.confidence) << '\n';
  }
}

ordered_json BuildReportToJson(const BuildReport &r) {
  ordered_json obj;
  obj["records_in"] = r.records_in;
  obj["duplicates_removed"] = r.duplicates_removed;
  obj["self_relations_removed"] = r.self_relations_removed;
  obj["missing_document"] = r.missing_document;
  obj["participant_missing"] = r.participant_missing;
  obj["trigger_missing"] = r.trigger_missing;
  obj["conflicting_labels"] = r.conflicting_labels;
  obj["unmapped_mentions"] = r.unmapped_mentions;
  obj["documents_used"] = r.documents_used;
  obj["unsplit_documents"] = r.unsplit_documents;
  obj["positives"] = r.positives;
  obj["negatives"] = r.negatives;
  obj["per_split"] = SplitTable(r.per_split);
  obj["negatives_by_source_class"] = SplitTable(r.negatives_by_source_class);
  return obj;
}

ordered_json MetricsReportToJson(const MetricsReport &r) {
  ordered_json obj;
  ordered_json classes = ordered_json::array();
  for (const ClassMetrics &cm : r.prf.classes) {
    ordered_json e;
    e["class"] = ClassName(cm.cls);
    e["precision"] = cm.prf.precision;
    e["recall"] = cm.prf.recall;
    e["f1"] = cm.prf.f1;
    e["support"] = cm.support;
    e["predicted"] = cm.predicted;
    e["tp"] = cm.tp;
    e["fp"] = cm.fp;
    e["fn"] = cm.fn;
    const auto &g = r.by_predicted[ClassIndex(cm.cls)];
    e["ece"] = g ? ordered_json(g->ece) : ordered_json(nullptr);
    e["mean_std"] = g ? ordered_json(g->mean_std) : ordered_json(nullptr);
    classes.push_back(e);
  }
  obj["classes"] = classes;
  obj["macro"] = PrfJson(r.prf.macro);
  ordered_json micro = PrfJson(r.prf.micro);
  micro["tp"] = r.prf.tp;
  micro["fp"] = r.prf.fp;
  micro["fn"] = r.prf.fn;
  obj["micro"] = micro;
  obj["support"] = r.prf.positive_support;
  obj["positive_predictions"] = r.positive_predictions;
  obj["ece"] = r.overall ? ordered_json(r.overall->ece) : ordered_json(nullptr);
  obj["bins"] = r.overall ? r.overall->k : 0;
  obj["average_std"] = r.average_std;
  obj["by_predicted_class"] = GroupJson(r.by_predicted);
  obj["by_true_class"] = GroupJson(r.by_true);
  ordered_json labels = ordered_json::array();
  ordered_json matrix = ordered_json::array();
  for (InteractionType t : kAllClasses) {
    labels.push_back(ClassName(t));
    ordered_json row = ordered_json::array();
    for (InteractionType p : kAllClasses) row.push_back(r.confusion.at(t, p));
    matrix.push_back(row);
  }
  obj["confusion"] = {{"labels", labels}, {"matrix", matrix}};
  return obj;
}

void WriteTriplet(std::ostream &out, const TripletPrediction &t) {
  ordered_json obj;
  obj["a"] = t.key.low;
  obj["ptm"] = ClassName(t.key.ptm);
  obj["b"] = t.key.high;
  obj["n_abstracts"] = t.n_abstracts();
  ordered_json pmids = ordered_json::array();
  for (const Evidence &e : t.evidence) pmids.push_back(e.pmid);
  obj["pmids"] = pmids;
  obj["max_conf"] = t.max_conf();
  obj["min_std"] = t.min_std();
  WriteLine(out, obj);
}

std::vector<TripletRow> ParseTriplets(std::istream &in, const std::string &source) {
  std::vector<TripletRow> out;
  ForEachJsonLine(in, source, [&](const LineReader &reader, const json &obj) {
    Fields f(reader, obj);
    TripletRow row;
    std::string ptm = f.String("ptm");
    auto cls = ParsePositiveClassName(ptm);
    if (!cls) reader.Fail("unknown interaction '" + ptm + "'");
    row.key = Canonicalize(f.String("a"), f.String("b"), *cls);
    row.pmids = f.Strings("pmids");
    if (row.pmids.size() != f.Count("n_abstracts")) {
      reader.Fail("n_abstracts does not match the pmid list");
    }
    row.max_conf = f.Number("max_conf");
    row.min_std = f.Number("min_std");
    out.push_back(std::move(row));
  });
  return out;
}

void WriteSimilarityCsv(std::ostream &out, std::span<const SimilarityResult> rows) {
  out << "pmid,max_similarity,nearest_train_pmid\n";
  for (const SimilarityResult &r : rows) {
    out << r.pmid << ',' << FormatDouble(r.max_similarity) << ',' << r.nearest_train_pmid << '\n';
  }
}

void WriteCommonWordsHeader(std::ostream &out) { out << "class,rank,word,count\n"; }

void WriteCommonWordsRows(std::ostream &out, InteractionType cls,
                          std::span<const WordCount> words) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    out << ClassName(cls) << ',' << (i + 1) << ',' << words[i].word << ',' << words[i].count
        << '\n';
  }
}

}  // namespace ptmx
