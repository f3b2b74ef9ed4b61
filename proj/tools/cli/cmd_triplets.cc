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
#include <string>
#include <vector>

#include "command_support.h"
#include "ptmx/aggregation.h"
#include "ptmx/errors.h"
#include "ptmx/records_io.h"

namespace ptmx::cli {
namespace fs = std::filesystem;

namespace {

nlohmann::ordered_json CountsJson(const TripletCounts &counts) {
  nlohmann::ordered_json j;
  for (InteractionType t : kPositiveClasses) {
    j[std::string(ClassName(t))] = {{"all", counts.total[ClassIndex(t)]},
                                    {"unique", counts.unique[ClassIndex(t)]}};
  }
  j["total"] = {{"all", counts.grand_total()}, {"unique", counts.grand_unique()}};
  return j;
}

}  // namespace

Command AddAggregate(CLI::App &root, Streams io) {
  struct Args {
    std::vector<std::string> preds;
    std::string out, all_out, report;
    std::size_t min_evidence = 1;
  };
  auto args = std::make_shared<Args>();
  CLI::App *app =
      root.add_subcommand("aggregate", "Fold positive predictions into <protein, ptm, protein>");
  app->add_option("--preds", args->preds, "Prediction JSON-lines (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--min-evidence", args->min_evidence,
                  "Keep triplets seen in at least this many abstracts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--out", args->out, "Retained triplets JSON-lines")->required();
  app->add_option("--all-out", args->all_out, "Every triplet JSON-lines");
  app->add_option("--report", args->report, "Per-class counts JSON");

  Command cmd{app, [args, io] {
    std::vector<fs::path> outputs = {args->out};
    if (!args->all_out.empty()) outputs.push_back(args->all_out);
    if (!args->report.empty()) outputs.push_back(args->report);
    EnsureNotInput(args->preds, outputs);

    TripletAccumulator acc;
    for (const std::string &path : args->preds) {
      auto in = OpenInput(path);
      ForEachPrediction(in, path, [&](PredictionRecord &&p) { acc.Add(p); });
    }
    std::vector<TripletPrediction> all = acc.Triplets();
    std::vector<TripletPrediction> kept = FilterMultiAbstract(all, args->min_evidence);

    Provenance prov;
    prov.command = "aggregate";
    prov.config["min_evidence"] = args->min_evidence;
    prov.config["inputs"] = args->preds.size();

    OutputFile out(args->out);
    WriteHeader(out.stream(), prov);
    for (const TripletPrediction &t : kept) WriteTriplet(out.stream(), t);
    out.Commit();
    if (!args->all_out.empty()) {
      OutputFile all_out(args->all_out);
      WriteHeader(all_out.stream(), prov);
      for (const TripletPrediction &t : all) WriteTriplet(all_out.stream(), t);
      all_out.Commit();
    }
    if (!args->report.empty()) {
      nlohmann::ordered_json body;
      body["all"] = CountsJson(CountTriplets(all));
      body["retained"] = CountsJson(CountTriplets(kept));
      WriteJsonObject(args->report, prov, body);
    }
    io.err << "aggregate: " << acc.total_predictions() << " positive predictions, "
           << all.size() << " triplets, " << kept.size() << " retained\n";
  }};
  return cmd;
}

Command AddCompareReference(CLI::App &root, Streams io) {
  struct Args {
    std::string triplets, reference, out;
  };
  auto args = std::make_shared<Args>();
  CLI::App *app = root.add_subcommand("compare-reference",
                                      "Recall of predicted triplets against a curated reference");
  app->add_option("--triplets", args->triplets, "Triplets JSON-lines")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--reference", args->reference, "Reference TSV: accession, ptm, accession")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--out", args->out, "Recall JSON")->required();

  Command cmd{app, [args, io] {
    EnsureNotInput({args->triplets, args->reference}, {args->out});
    auto tin = OpenInput(args->triplets);
    auto rows = ParseTriplets(tin, args->triplets);
    std::vector<TripletKey> keys;
    keys.reserve(rows.size());
    for (const TripletRow &r : rows) keys.push_back(r.key);
    auto rin = OpenInput(args->reference);
    ReferenceSet ref = ParseReference(rin, args->reference);
    auto recall = RecallAgainstReference(keys, ref.keys);

    nlohmann::ordered_json body;
    body["reference"] = {{"rows", ref.rows},
                         {"unique", ref.keys.size()},
                         {"missing_accession", ref.missing_accession},
                         {"self_pairs", ref.self_pairs},
                         {"duplicates", ref.duplicates}};
    nlohmann::ordered_json classes;
    std::size_t found = 0, total = 0;
    for (InteractionType t : kPositiveClasses) {
      const RecallRow &r = recall[ClassIndex(t)];
      if (r.reference_total == 0 && r.found == 0) continue;
      classes[std::string(ClassName(t))] = {
          {"found", r.found}, {"reference", r.reference_total}, {"recall", r.ratio}};
      found += r.found;
      total += r.reference_total;
    }
    body["classes"] = classes;
    body["overall"] = {{"found", found},
                       {"reference", total},
                       {"recall", total == 0 ? 0.0 : static_cast<double>(found) / total}};

    Provenance prov;
    prov.command = "compare-reference";
    WriteJsonObject(args->out, prov, body);
    io.err << "compare-reference: " << found << " of " << total << " reference triplets found\n";
  }};
  return cmd;
}

}  // namespace ptmx::cli
