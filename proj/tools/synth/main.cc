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

#include <iostream>

#include <CLI11.hpp>

#include "synthetic_corpus.h"

int main(int argc, char **argv) {
  ptmx::synth::CorpusOptions options;
  std::string out;
  CLI::App app("Write a random corpus in the ptmx input formats", "ptmx-synth");
  app.add_option("--documents", options.documents)->capture_default_str();
  app.add_option("--seed", options.seed)->capture_default_str();
  app.add_option("--genes", options.genes, "Gene pool size (0 = automatic)")
      ->capture_default_str();
  app.add_option("--clean-fraction", options.clean_fraction)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--crowded-fraction", options.crowded_fraction)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--kb-noise-fraction", options.kb_noise_fraction)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--unmapped-rate", options.unmapped_rate)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--out", out, "Output directory")->required();
  CLI11_PARSE(app, argc, argv);
  try {
    ptmx::synth::WriteCorpus(ptmx::synth::Generate(options), out);
  } catch (const std::exception &e) {
    std::cerr << "ptmx-synth: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
