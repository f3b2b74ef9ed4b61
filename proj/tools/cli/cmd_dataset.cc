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
#include <unordered_map>
#include <vector>

#include "command_support.h"
#include "ptmx/corpus_io.h"
#include "ptmx/dataset.h"
#include "ptmx/errors.h"
#include "ptmx/normalization.h"
#include "ptmx/parallel.h"
#include "ptmx/records_io.h"
#include "ptmx/text.h"
#include "ptmx/transform.h"

namespace ptmx::cli {
namespace fs = std::filesystem;

Command AddBuildDataset(CLI::App &root, Streams io) {
  struct Args {
    std::string kb, docs, mentions, map, ratios, stems, out;
    std::uint64_t seed = 0;
    unsigned jobs = 0;
  };
  auto args = std::make_shared<Args>();
  CLI::App *app = root.add_subcommand(
      "build-dataset", "Label abstracts against the knowledge base and split by pmid");
  app->add_option("--kb", args->kb, "Knowledge-base TSV")->required()->check(CLI::ExistingFile);
  app->add_option("--docs", args->docs, "Abstracts JSON-lines")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--mentions", args->mentions, "Gene mention TSV")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--map", args->map, "Gene to protein TSV")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--ratios", args->ratios, "train,val,test fractions, e.g. 0.7,0.1,0.2")
      ->required();
  app->add_option("--seed", args->seed, "Split seed")->capture_default_str();
  app->add_option("--stems", args->stems, "Trigger stem table (class<TAB>stem,...)")
      ->check(CLI::ExistingFile);
  app->add_option("--out", args->out, "Output directory")->required();
  AddJobs(*app, args->jobs);

  Command cmd{app, [args, io] {
    std::vector<double> ratios = ParseDoubleList(args->ratios, "--ratios");
    if (ratios.size() != kNumSplits) throw ValidationError("--ratios needs three fractions");
    BuildOptions options;
    for (std::size_t i = 0; i < kNumSplits; ++i) options.ratios.fractions[i] = ratios[i];
    ValidateRatios(options.ratios);
    options.seed = args->seed;
    std::string stems_digest;
    options.stems = LoadStems(args->stems, &stems_digest);
    options.jobs = args->jobs;

    const fs::path out(args->out);
    std::vector<fs::path> outputs = {out / "dataset.jsonl", out / "report.json"};
    for (std::size_t s = 0; s < kNumSplits; ++s) {
      outputs.push_back(out / (std::string(SplitName(static_cast<Split>(s))) + ".jsonl"));
    }
    EnsureNotInput({args->kb, args->docs, args->mentions, args->map, args->stems}, outputs);

    auto kb_in = OpenInput(args->kb);
    auto kb = ParseKbRecords(kb_in, args->kb);
    auto docs_in = OpenInput(args->docs);
    auto docs = ParseDocuments(docs_in, args->docs);
    auto mentions_in = OpenInput(args->mentions);
    auto mentions = ParseMentions(mentions_in, args->mentions);
    auto map_in = OpenInput(args->map);
    auto map = ParseGeneProteinMap(map_in, args->map);

    Dataset dataset = BuildDataset(kb, docs, mentions, map, options);

    Provenance prov;
    prov.command = "build-dataset";
    prov.seed = args->seed;
    prov.config["ratios"] = ratios;
    prov.config["stems"] = stems_digest;

    OutputFile all(outputs[0]);
    WriteHeader(all.stream(), prov);
    std::array<std::unique_ptr<OutputFile>, kNumSplits> splits;
    for (std::size_t s = 0; s < kNumSplits; ++s) {
      splits[s] = std::make_unique<OutputFile>(outputs[2 + s]);
      WriteHeader(splits[s]->stream(), prov);
    }
    for (const LabeledSample &sample : dataset.samples) {
      WriteSample(all.stream(), sample);
      WriteSample(splits[static_cast<std::size_t>(sample.split)]->stream(), sample);
    }
    all.Commit();
    for (auto &f : splits) f->Commit();
    WriteJsonObject(outputs[1], prov, BuildReportToJson(dataset.report));

    io.err << "build-dataset: " << dataset.report.positives << " positives, "
           << dataset.report.negatives << " negatives from " << dataset.report.documents_used
           << " abstracts\n";
  }};
  return cmd;
}

namespace {

// Masks every candidate pair of one raw abstract for inference.
std::vector<TransformedInput> InferenceInputs(const Document &doc,
                                              std::span<const GeneMention> mentions,
                                              const GeneProteinMap &map, std::size_t budget,
                                              NormalizedAbstract *normalized) {
  NormalizedAbstract na =
      NormalizeDocument(doc, mentions, map, std::span<const std::string>());
  std::set<std::string> present;
  for (const std::string &p : na.proteins) {
    if (ContainsWholeWord(na.text, p)) present.insert(p);
  }
  std::vector<TransformedInput> out;
  for (const ProteinPair &pair : EnumeratePairs(present)) {
    TransformedInput t = MaskParticipants(na.pmid, na.text, na.proteins, pair);
    if (budget > 0) t.text = Truncate(t.text, budget);
    out.push_back(std::move(t));
  }
  *normalized = std::move(na);
  return out;
}

}  // namespace

Command AddTransform(CLI::App &root, Streams io) {
  struct Args {
    std::string dataset, docs, mentions, map, out, normalized_out;
    std::size_t budget = 510;
    unsigned jobs = 0;
  };
  auto args = std::make_shared<Args>();
  CLI::App *app = root.add_subcommand(
      "transform", "Mask participants; from a labeled dataset or, for inference, raw abstracts");
  auto *dataset = app->add_option("--dataset", args->dataset, "Labeled samples JSON-lines")
                      ->check(CLI::ExistingFile);
  auto *docs = app->add_option("--docs", args->docs, "Abstracts JSON-lines (inference)")
                   ->check(CLI::ExistingFile);
  auto *mentions = app->add_option("--mentions", args->mentions, "Gene mention TSV (inference)")
                       ->check(CLI::ExistingFile);
  auto *map = app->add_option("--map", args->map, "Gene to protein TSV (inference)")
                  ->check(CLI::ExistingFile);
  dataset->excludes(docs)->excludes(mentions)->excludes(map);
  docs->needs(mentions)->needs(map);
  mentions->needs(docs);
  map->needs(docs);
  app->add_option("--budget", args->budget,
                  "Whitespace-token budget per input (0 = no truncation)")
      ->capture_default_str();
  app->add_option("--normalized-out", args->normalized_out,
                  "Also write normalized abstracts (inference)")
      ->needs(docs);
  app->add_option("--out", args->out, "Transformed inputs JSON-lines")->required();
  AddJobs(*app, args->jobs);

  Command cmd{app, [args, io] {
    if (args->dataset.empty() && args->docs.empty()) {
      throw ValidationError("transform needs --dataset or --docs/--mentions/--map");
    }
    std::vector<fs::path> outputs = {args->out};
    if (!args->normalized_out.empty()) outputs.push_back(args->normalized_out);
    EnsureNotInput({args->dataset, args->docs, args->mentions, args->map}, outputs);
    if (outputs.size() == 2 && fs::path(args->out) == fs::path(args->normalized_out)) {
      throw ValidationError("--out and --normalized-out must differ");
    }

    Provenance prov;
    prov.command = "transform";
    prov.config["mode"] = args->dataset.empty() ? "inference" : "dataset";
    prov.config["budget"] = args->budget;

    OutputFile out(args->out);
    WriteHeader(out.stream(), prov);
    std::size_t written = 0;

    if (!args->dataset.empty()) {
      auto in = OpenInput(args->dataset);
      auto samples = ParseSamples(in, args->dataset);
      std::vector<TransformedInput> inputs(samples.size());
      ParallelFor(samples.size(), args->jobs, [&](std::size_t i) {
        inputs[i] = MaskSample(samples[i]);
        if (args->budget > 0) inputs[i].text = Truncate(inputs[i].text, args->budget);
      });
      for (const TransformedInput &t : inputs) WriteTransformed(out.stream(), t);
      written = inputs.size();
      out.Commit();
    } else {
      auto docs_in = OpenInput(args->docs);
      auto docs = ParseDocuments(docs_in, args->docs);
      auto mentions_in = OpenInput(args->mentions);
      auto mentions = ParseMentions(mentions_in, args->mentions);
      auto map_in = OpenInput(args->map);
      auto map = ParseGeneProteinMap(map_in, args->map);

      std::unordered_map<std::string, std::vector<GeneMention>> by_pmid;
      for (GeneMention &m : mentions) by_pmid[m.pmid].push_back(std::move(m));
      std::size_t orphan = by_pmid.size();
      for (const Document &d : docs) orphan -= by_pmid.count(d.pmid);

      std::vector<std::vector<TransformedInput>> per_doc(docs.size());
      std::vector<NormalizedAbstract> normalized(docs.size());
      static const std::vector<GeneMention> kNone;
      ParallelFor(docs.size(), args->jobs, [&](std::size_t i) {
        auto it = by_pmid.find(docs[i].pmid);
        const auto &ms = it == by_pmid.end() ? kNone : it->second;
        per_doc[i] = InferenceInputs(docs[i], ms, map, args->budget, &normalized[i]);
      });
      std::size_t skipped = 0;
      for (const auto &inputs : per_doc) {
        for (const TransformedInput &t : inputs) WriteTransformed(out.stream(), t);
        written += inputs.size();
      }
      for (const NormalizedAbstract &na : normalized) skipped += na.skipped;
      if (!args->normalized_out.empty()) {
        OutputFile nout(args->normalized_out);
        WriteHeader(nout.stream(), prov);
        for (const NormalizedAbstract &na : normalized) WriteNormalized(nout.stream(), na);
        nout.Commit();
      }
      out.Commit();
      io.err << "transform: " << skipped << " unmapped mentions kept as text";
      if (orphan > 0) io.err << ", mentions for " << orphan << " unknown pmids ignored";
      io.err << '\n';
    }
    io.err << "transform: " << written << " inputs\n";
  }};
  return cmd;
}

}  // namespace ptmx::cli
