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

#ifndef PTMX_TOOLS_SYNTH_SYNTHETIC_CORPUS_H_
#define PTMX_TOOLS_SYNTH_SYNTHETIC_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ptmx/aggregation.h"
#include "ptmx/corpus_io.h"

namespace ptmx::synth {

// Knobs for a random corpus. Fractions are of documents and need not sum to
// one; the remainder are background abstracts without a knowledge-base entry.
struct CorpusOptions {
  std::size_t documents = 100;
  std::uint64_t seed = 1;
  std::size_t genes = 0;  // gene pool size; 0 = max(40, documents / 2)
  double clean_fraction = 0.55;
  // Several distractor proteins and a competing trigger of another class.
  double crowded_fraction = 0.25;
  // Knowledge-base entries that noise reduction must reject.
  double kb_noise_fraction = 0.10;
  // Per document chance of one mention whose gene is absent from the map.
  double unmapped_rate = 0.05;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<GeneMention> mentions;
  GeneProteinMap map;
  std::vector<KbRecord> kb;
  // Canonical triplets of the planted true interactions, some with a missing
  // accession, for recall comparisons.
  std::vector<std::string> reference_rows;
};

Corpus Generate(const CorpusOptions &options);

// docs.jsonl, mentions.tsv, map.tsv, kb.tsv and reference.tsv under `dir`.
void WriteCorpus(const Corpus &corpus, const std::filesystem::path &dir);

}  // namespace ptmx::synth

#endif  // PTMX_TOOLS_SYNTH_SYNTHETIC_CORPUS_H_
