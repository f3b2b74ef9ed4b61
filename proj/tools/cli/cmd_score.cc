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

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "command_support.h"
#include "ptmx/calibration.h"
#include "ptmx/errors.h"
#include "ptmx/records_io.h"
#include "ptmx/scoring.h"

namespace ptmx::cli {

Command AddScore(CLI::App &root, Streams io) {
  struct Args {
    std::string inputs, out, stems;
    std::vector<std::string> scorers;
    int models = 10;
    std::size_t batch_size = 64;
    int retries = 2;
    long long timeout_ms = 60000;
    double perturbation = 0.05;
    std::uint64_t seed = 0;
    unsigned jobs = 0;
  };
  auto args = std::make_shared<Args>();
  CLI::App *app = root.add_subcommand("score", "Run an M-model ensemble over transformed inputs");
  app->add_option("--inputs", args->inputs, "Transformed inputs JSON-lines")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--scorer", args->scorers,
                  "stub | cmd:<command> | url:<base url>; '{i}' expands to the model index. "
                  "Give once to replicate M times or once per member")
      ->take_all();
  app->add_option("--models,-M", args->models, "Ensemble size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--batch-size", args->batch_size)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--retries", args->retries, "Retries per failing batch")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_option("--timeout-ms", args->timeout_ms, "External scorer timeout per batch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--perturbation", args->perturbation, "Stub weight perturbation")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app->add_option("--seed", args->seed, "Stub perturbation seed")->capture_default_str();
  app->add_option("--stems", args->stems, "Trigger stem table for the stub scorer")
      ->check(CLI::ExistingFile);
  app->add_option("--out", args->out, "Raw ensemble output JSON-lines")->required();
  AddJobs(*app, args->jobs);

  Command cmd{app, [args, io, app] {
    EnsureNotInput({args->inputs, args->stems}, {args->out});
    std::vector<std::string> specs = args->scorers;
    if (specs.empty()) specs.push_back("stub");
    std::vector<ScorerHandle> handles;
    if (specs.size() == 1) {
      for (int i = 1; i <= args->models; ++i) handles.push_back(ParseScorerSpec(specs[0], i));
    } else {
      if (app->count("--models") > 0 && static_cast<std::size_t>(args->models) != specs.size()) {
        throw ValidationError("--models disagrees with the number of --scorer specs");
      }
      for (std::size_t i = 0; i < specs.size(); ++i) {
        handles.push_back(ParseScorerSpec(specs[i], static_cast<int>(i + 1)));
      }
    }

    StubOptions stub;
    stub.perturbation = args->perturbation;
    stub.seed = args->seed;
    std::string stems_digest;
    stub.stems = LoadStems(args->stems, &stems_digest);
    ExternalOptions external;
    external.timeout = std::chrono::milliseconds(args->timeout_ms);

    std::vector<std::unique_ptr<Scorer>> owned;
    std::vector<Scorer *> scorers;
    nlohmann::ordered_json spec_list = nlohmann::ordered_json::array();
    for (const ScorerHandle &h : handles) {
      owned.push_back(MakeScorer(h, stub, external));
      scorers.push_back(owned.back().get());
      spec_list.push_back(ScorerSpecString(h));
    }

    auto in = OpenInput(args->inputs);
    auto inputs = ParseTransformed(in, args->inputs);

    EnsembleOptions options;
    options.batch_size = args->batch_size;
    options.retries = args->retries;
    options.jobs = args->jobs;
    auto raw = RunEnsemble(inputs, scorers, options);

    Provenance prov;
    prov.command = "score";
    prov.seed = args->seed;
    prov.config["models"] = handles.size();
    prov.config["scorers"] = spec_list;
    prov.config["perturbation"] = args->perturbation;
    prov.config["stems"] = stems_digest;
    prov.config["batch_size"] = args->batch_size;
    prov.config["retries"] = args->retries;

    OutputFile out(args->out);
    WriteHeader(out.stream(), prov);
    std::size_t failures = 0;
    for (const RawEnsembleOutput &r : raw) {
      WriteRawOutput(out.stream(), r);
      if (r.failure) ++failures;
    }
    out.Commit();
    io.err << "score: " << raw.size() << " inputs x " << handles.size() << " models";
    if (failures > 0) io.err << ", " << failures << " rejected";
    io.err << '\n';
  }};
  return cmd;
}

Command AddCalibrate(CLI::App &root, Streams io) {
  struct Args {
    std::string preds, out, failures;
  };
  auto args = std::make_shared<Args>();
  CLI::App *app = root.add_subcommand(
      "calibrate", "Aggregate raw ensemble output into predictions with confidence and std");
  app->add_option("--preds", args->preds, "Raw ensemble output JSON-lines")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("--out", args->out, "Prediction JSON-lines")->required();
  app->add_option("--failures", args->failures, "Write rejected inputs here");

  Command cmd{app, [args, io] {
    std::vector<std::filesystem::path> outputs = {args->out};
    if (!args->failures.empty()) outputs.push_back(args->failures);
    EnsureNotInput({args->preds}, outputs);
    auto in = OpenInput(args->preds);
    auto raw = ParseRawOutputs(in, args->preds);

    Provenance prov;
    prov.command = "calibrate";

    OutputFile out(args->out);
    WriteHeader(out.stream(), prov);
    std::unique_ptr<OutputFile> failed;
    if (!args->failures.empty()) {
      failed = std::make_unique<OutputFile>(args->failures);
      WriteHeader(failed->stream(), prov);
    }
    std::size_t n_failed = 0;
    for (const RawEnsembleOutput &r : raw) {
      if (r.failure) {
        ++n_failed;
        if (failed) WriteRawOutput(failed->stream(), r);
        continue;
      }
      WritePrediction(out.stream(), Aggregate(r));
    }
    out.Commit();
    if (failed) failed->Commit();
    io.err << "calibrate: " << raw.size() - n_failed << " predictions";
    if (n_failed > 0) io.err << ", " << n_failed << " failed inputs skipped";
    io.err << '\n';
  }};
  return cmd;
}

}  // namespace ptmx::cli
