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

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "command_support.h"
#include "ptmx/calibration.h"
#include "ptmx/errors.h"
#include "ptmx/evaluation.h"
#include "ptmx/hashing.h"
#include "ptmx/records_io.h"

namespace ptmx::cli {
namespace fs = std::filesystem;

namespace {

GoldLabels LoadGold(const std::string &path) {
  auto in = OpenInput(path);
  auto samples = ParseSamples(in, path);
  return GoldFromSamples(samples);
}

ThresholdProfile LoadProfile(const std::string &path) {
  auto in = OpenInput(path);
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(path, 0, e.what());
  }
  return ThresholdProfileFromJson(json, path);
}

// One document per pmid, first occurrence wins.
std::vector<Document> DistinctDocuments(std::span<const LabeledSample> samples) {
  std::vector<Document> docs;
  std::set<std::string> seen;
  for (const LabeledSample &s : samples) {
    if (seen.insert(s.pmid).second) docs.push_back({s.pmid, s.text});
  }
  return docs;
}

}  // namespace

Command AddLearnThresholds(CLI::App &root, Streams io) {
  struct Args {
    std::string preds, out, gold;
    double percentile = 50;
    bool correct_only = false;
  };
  auto args = std::make_shared<Args>();
  CLI::App *app = root.add_subcommand(
      "learn-thresholds", "Per-class confidence and std cut-offs from training predictions");
  app->add_option("--preds", args->preds, "Prediction JSON-lines")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--out", args->out, "Threshold profile JSON")->required();
  app->add_option("--percentile", args->percentile, "Nearest-rank percentile in (0, 100]")
      ->check(CLI::Range(0.0, 100.0))
      ->capture_default_str();
  auto *gold = app->add_option("--gold", args->gold, "Labeled samples JSON-lines")
                   ->check(CLI::ExistingFile);
  app->add_flag("--correct-only", args->correct_only,
                "Learn only from predictions that match the gold label")
      ->needs(gold);

  Command cmd{app, [args, io] {
    EnsureNotInput({args->preds, args->gold}, {args->out});
    if (!(args->percentile > 0)) throw ValidationError("--percentile must be in (0, 100]");
    auto in = OpenInput(args->preds);
    auto preds = ParsePredictions(in, args->preds);
    GoldLabels gold;
    if (args->correct_only) gold = LoadGold(args->gold);
    LearnOptions options{args->percentile, args->correct_only};
    ThresholdProfile profile =
        LearnThresholds(preds, options, args->correct_only ? &gold : nullptr);

    Provenance prov;
    prov.command = "learn-thresholds";
    prov.config["percentile"] = args->percentile;
    prov.config["correct_only"] = args->correct_only;
    WriteJsonObject(args->out, prov, ThresholdProfileToJson(profile));
    std::size_t classes = 0;
    for (const auto &c : profile.classes) classes += c.has_value();
    io.err << "learn-thresholds: " << classes << " classes from " << preds.size()
           << " predictions\n";
  }};
  return cmd;
}

Command AddFilter(CLI::App &root, Streams io) {
  struct Args {
    std::string preds, profile, out, low_out;
  };
  auto args = std::make_shared<Args>();
  CLI::App *app =
      root.add_subcommand("filter", "Keep high-quality predictions; optionally split off low ones");
  app->add_option("--preds", args->preds, "Prediction JSON-lines")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--profile", args->profile, "Threshold profile JSON")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--out", args->out, "High-quality predictions JSON-lines")->required();
  app->add_option("--low-quality-out", args->low_out, "Low-quality predictions JSON-lines");

  Command cmd{app, [args, io] {
    std::vector<fs::path> outputs = {args->out};
    if (!args->low_out.empty()) outputs.push_back(args->low_out);
    EnsureNotInput({args->preds, args->profile}, outputs);
    ThresholdProfile profile = LoadProfile(args->profile);

    Provenance prov;
    prov.command = "filter";
    prov.config["profile"] = ThresholdProfileToJson(profile);

    OutputFile high(args->out);
    WriteHeader(high.stream(), prov);
    std::unique_ptr<OutputFile> low;
    if (!args->low_out.empty()) {
      low = std::make_unique<OutputFile>(args->low_out);
      WriteHeader(low->stream(), prov);
    }
    std::size_t seen = 0, kept = 0, low_count = 0;
    auto in = OpenInput(args->preds);
    ForEachPrediction(in, args->preds, [&](PredictionRecord &&p) {
      ++seen;
      if (IsHighQuality(p, profile)) {
        ++kept;
        WritePrediction(high.stream(), p);
      }
      if (low && IsLowQuality(p, profile)) {
        ++low_count;
        WritePrediction(low->stream(), p);
      }
    });
    high.Commit();
    if (low) low->Commit();
    io.err << "filter: kept " << kept << " of " << seen;
    if (low) io.err << ", " << low_count << " low quality";
    io.err << '\n';
  }};
  return cmd;
}

Command AddEvaluate(CLI::App &root, Streams io) {
  struct Args {
    std::string preds, gold, out, train, stopwords;
    std::size_t bins = kDefaultBins;
    std::size_t top_k = 20;
    unsigned jobs = 0;
  };
  auto args = std::make_shared<Args>();
  CLI::App *app = root.add_subcommand("evaluate", "Metrics, calibration and corpus analyses");
  app->add_option("--preds", args->preds, "Prediction JSON-lines")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--gold", args->gold, "Labeled samples JSON-lines")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--bins", args->bins, "Calibration bins")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--out", args->out,
                  "Output directory (metrics.json, metrics.txt, bins.csv); table to stdout if "
                  "omitted");
  auto *train = app->add_option("--train", args->train,
                                "Training samples; adds similarity.csv and common_words.csv")
                    ->check(CLI::ExistingFile);
  app->add_option("--top-k", args->top_k, "Common words per class")
      ->check(CLI::PositiveNumber)
      ->capture_default_str()
      ->needs(train);
  app->add_option("--stopwords", args->stopwords, "Stopword list, one per line")
      ->check(CLI::ExistingFile)
      ->needs(train);
  AddJobs(*app, args->jobs);

  Command cmd{app, [args, io] {
    const fs::path dir(args->out);
    std::vector<fs::path> outputs;
    if (!args->out.empty()) {
      for (const char *name :
           {"metrics.json", "metrics.txt", "bins.csv", "similarity.csv", "common_words.csv"}) {
        outputs.push_back(dir / name);
      }
    }
    EnsureNotInput({args->preds, args->gold, args->train, args->stopwords}, outputs);
    if (!args->train.empty() && args->out.empty()) {
      throw ValidationError("--train needs --out");
    }

    auto pin = OpenInput(args->preds);
    auto preds = ParsePredictions(pin, args->preds);
    auto gin = OpenInput(args->gold);
    auto gold_samples = ParseSamples(gin, args->gold);
    GoldLabels gold = GoldFromSamples(gold_samples);
    std::size_t unmatched = 0;
    auto joined = JoinGold(preds, gold, &unmatched);
    MetricsReport report = Evaluate(joined, args->bins);
    const std::string table = FormatMetricsTable(report);

    if (args->out.empty()) {
      io.out << table;
      return;
    }

    Provenance prov;
    prov.command = "evaluate";
    prov.config["bins"] = args->bins;
    if (!args->train.empty()) {
      prov.config["top_k"] = args->top_k;
      std::string digest;
      if (args->stopwords.empty()) {
        digest = "default";
      } else {
        digest = Hex64(Fnv1a64(ReadFile(args->stopwords)));
      }
      prov.config["stopwords"] = digest;
    }

    nlohmann::ordered_json body = MetricsReportToJson(report);
    body["unmatched_gold"] = unmatched;
    WriteJsonObject(outputs[0], prov, body);

    OutputFile txt(outputs[1]);
    WriteHeader(txt.stream(), prov);
    txt.stream() << table;
    txt.Commit();

    OutputFile csv(outputs[2]);
    WriteHeader(csv.stream(), prov);
    if (report.overall) {
      WriteBinsCsv(csv.stream(), *report.overall);
    } else {
      csv.stream() << "bin_low,bin_high,count,accuracy,confidence\n";
    }
    csv.Commit();

    if (!args->train.empty()) {
      auto tin = OpenInput(args->train);
      auto train_samples = ParseSamples(tin, args->train);
      auto eval_docs = DistinctDocuments(gold_samples);
      auto train_docs = DistinctDocuments(train_samples);
      auto sims = NearestTrainSimilarity(eval_docs, train_docs, args->jobs);
      OutputFile sim(outputs[3]);
      WriteHeader(sim.stream(), prov);
      WriteSimilarityCsv(sim.stream(), sims);
      sim.Commit();

      StopwordSet stopwords = DefaultStopwords();
      if (!args->stopwords.empty()) {
        auto sin = OpenInput(args->stopwords);
        stopwords = ParseStopwords(sin);
      }
      // Abstracts grouped by the label of their evaluation samples.
      std::array<std::vector<std::string>, kNumClasses> texts;
      std::array<std::set<std::string>, kNumClasses> seen;
      for (const LabeledSample &s : gold_samples) {
        std::size_t c = ClassIndex(s.label);
        if (seen[c].insert(s.pmid).second) texts[c].push_back(s.text);
      }
      OutputFile words(outputs[4]);
      WriteHeader(words.stream(), prov);
      WriteCommonWordsHeader(words.stream());
      for (InteractionType t : kAllClasses) {
        const auto &docs = texts[ClassIndex(t)];
        if (docs.empty()) continue;
        WriteCommonWordsRows(words.stream(), t, CommonWords(docs, args->top_k, stopwords));
      }
      words.Commit();
    }
    io.err << "evaluate: " << joined.size() << " predictions";
    if (unmatched > 0) io.err << ", " << unmatched << " gold samples without a prediction";
    io.err << '\n';
  }};
  return cmd;
}

}  // namespace ptmx::cli
