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

#include <csignal>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include <pthread.h>

#include "command_support.h"
#include "ptmx/curation.h"
#include "ptmx/curation_server.h"
#include "ptmx/errors.h"
#include "ptmx/records_io.h"

namespace ptmx::cli {
namespace fs = std::filesystem;

namespace {

struct LoadArgs {
  std::string preds, inputs, stems;
};

void AddLoadOptions(CLI::App &app, LoadArgs &args) {
  auto *preds = app.add_option("--preds", args.preds, "Predictions to queue for review")
                    ->check(CLI::ExistingFile);
  auto *inputs = app.add_option("--inputs", args.inputs,
                                "Transformed inputs holding the text of each prediction")
                     ->check(CLI::ExistingFile);
  preds->needs(inputs);
  inputs->needs(preds);
  app.add_option("--stems", args.stems, "Trigger stem table for highlights")
      ->check(CLI::ExistingFile)
      ->needs(preds);
}

// Queues every positive prediction; returns the number of new items.
std::size_t LoadIntoStore(CurationStore &store, const LoadArgs &args) {
  if (args.preds.empty()) return 0;
  StemTable stems = LoadStems(args.stems, nullptr);
  std::unordered_map<std::string, std::string> texts;
  {
    auto in = OpenInput(args.inputs);
    for (TransformedInput &t : ParseTransformed(in, args.inputs)) {
      texts.emplace(t.id, std::move(t.text));
    }
  }
  std::vector<CurationItem> items;
  auto in = OpenInput(args.preds);
  ForEachPrediction(in, args.preds, [&](PredictionRecord &&p) {
    if (!IsPositive(p.pred)) return;
    auto it = texts.find(p.id);
    if (it == texts.end()) {
      throw ValidationError("prediction " + p.id + " has no text in " + args.inputs);
    }
    items.push_back(MakeItem(p, it->second, stems));
  });
  return store.LoadItems(items);
}

}  // namespace

Command AddSampleReview(CLI::App &root, Streams io) {
  struct Args {
    std::string state, out;
    LoadArgs load;
    std::size_t per_ptm = 0;
    std::uint64_t seed = 0;
  };
  auto args = std::make_shared<Args>();
  CLI::App *app = root.add_subcommand("sample-review",
                                      "Draw a per-PTM random batch of pending review items");
  app->add_option("--state", args->state, "Curation state directory")->required();
  AddLoadOptions(*app, args->load);
  app->add_option("--per-ptm", args->per_ptm, "Items per PTM class")
      ->required()
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", args->seed, "Sampling seed")->capture_default_str();
  app->add_option("--out", args->out, "Sampled items JSON-lines")->required();

  Command cmd{app, [args, io] {
    EnsureNotInput({args->load.preds, args->load.inputs, args->load.stems}, {args->out});
    auto store = CurationStore::Open(args->state);
    std::size_t added = LoadIntoStore(*store, args->load);
    auto batch = store->SampleBatch(args->per_ptm, args->seed);

    Provenance prov;
    prov.command = "sample-review";
    prov.seed = args->seed;
    prov.config["per_ptm"] = args->per_ptm;
    OutputFile out(args->out);
    WriteHeader(out.stream(), prov);
    for (const CurationItem &item : batch) out.stream() << ItemToJson(item).dump() << '\n';
    out.Commit();
    io.err << "sample-review: " << added << " items queued, " << batch.size() << " sampled\n";
  }};
  return cmd;
}

Command AddServe(CLI::App &root, Streams io) {
  struct Args {
    std::string state;
    LoadArgs load;
    ServerOptions server;
  };
  auto args = std::make_shared<Args>();
  CLI::App *app = root.add_subcommand("serve", "Serve the curation HTTP API until interrupted");
  app->add_option("--state", args->state, "Curation state directory")->required();
  AddLoadOptions(*app, args->load);
  app->add_option("--host", args->server.host)->capture_default_str();
  app->add_option("--port", args->server.port, "0 picks a free port")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  app->add_option("--static", args->server.static_dir, "Review UI bundle served under /")
      ->check(CLI::ExistingDirectory);
  app->add_option("--threads", args->server.threads)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  Command cmd{app, [args, io] {
    auto store = CurationStore::Open(args->state);
    if (store->discarded_bytes() > 0) {
      io.err << "serve: dropped " << store->discarded_bytes() << " bytes of a torn log line\n";
    }
    std::size_t added = LoadIntoStore(*store, args->load);

    // Block the stop signals before the server threads start so they inherit
    // the mask and only sigwait below sees them.
    sigset_t stop_signals, previous;
    sigemptyset(&stop_signals);
    sigaddset(&stop_signals, SIGINT);
    sigaddset(&stop_signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &stop_signals, &previous);

    CurationServer server(*store, args->server);
    int port = 0;
    try {
      port = server.Start();
    } catch (...) {
      pthread_sigmask(SIG_SETMASK, &previous, nullptr);
      throw;
    }
    io.out << "listening on http://" << args->server.host << ':' << port << " (" << added
           << " items queued)" << std::endl;
    int sig = 0;
    sigwait(&stop_signals, &sig);
    server.Stop();
    store->Snapshot();
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    io.err << "serve: stopped\n";
  }};
  return cmd;
}

}  // namespace ptmx::cli
