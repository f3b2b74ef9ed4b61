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

#include "synthetic_corpus.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <random>
#include <set>
#include <string_view>

#include "ptmx/errors.h"
#include "ptmx/hashing.h"
#include "ptmx/interaction.h"
#include "ptmx/utf8.h"

namespace ptmx::synth {
namespace {

using IT = InteractionType;

struct Templates {
  IT cls;
  double weight;
  std::array<std::string_view, 2> sentences;
};

// {A} and {B} are the participants; {X} and {Y} are other proteins.
constexpr std::array<Templates, 6> kTriggers = {{
    {IT::kPhosphorylation, 0.60,
     {"{A} phosphorylates {B} at a conserved serine.",
      "Phosphorylation of {B} by {A} was increased after stimulation."}},
    {IT::kDephosphorylation, 0.10,
     {"{A} dephosphorylates {B} in vitro.",
      "Dephosphorylation of {B} by {A} restored its activity."}},
    {IT::kMethylation, 0.10,
     {"{A} methylates {B} on arginine residues.",
      "Methylation of {B} by {A} was detected by mass spectrometry."}},
    {IT::kUbiquitination, 0.08,
     {"{A} ubiquitinates {B} for proteasomal degradation.",
      "Ubiquitination of {B} by {A} promoted its turnover."}},
    {IT::kAcetylation, 0.07,
     {"{A} acetylates {B} at lysine residues.",
      "Acetylation of {B} by {A} enhanced DNA binding."}},
    {IT::kDeubiquitination, 0.05,
     {"{A} deubiquitinates {B} and stabilises it.",
      "Deubiquitination of {B} by {A} was observed in cells."}},
}};

constexpr std::array<std::string_view, 9> kFillers = {
    "The interaction was confirmed by co-immunoprecipitation.",
    "These results suggest a regulatory role in cell survival.",
    "Expression of {X} was elevated in tumour samples.",
    "Loss of {X} impaired TNF-\xce\xb1 signalling in vitro.",
    "We characterised the binding interface using mutagenesis.",
    "{X} localises to the nucleus after stimulation.",
    "Knockdown of {X} reduced proliferation of {Y} positive cells.",
    "Together, these data define a new pathway.",
    "Binding of {A} to {B} required an intact C-terminal domain.",
};

constexpr std::array<std::string_view, 10> kSymbolPrefixes = {
    "MAPK", "AKT", "SRC", "PKC", "CDK", "STAT", "SMAD", "HDAC", "TRAF", "RNF",
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(Mix64(seed)) {}
  std::size_t Below(std::size_t n) { return static_cast<std::size_t>(UniformBelow(engine_, n)); }
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool Chance(double p) { return Unit() < p; }
  std::mt19937_64 &engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct Gene {
  std::string id;
  std::string symbol;
  std::vector<std::string> accessions;
};

// Assembles one abstract while recording mentions in scalar offsets.
class DocBuilder {
 public:
  DocBuilder(std::string pmid, const std::vector<Gene> &genes, std::vector<GeneMention> &mentions)
      : pmid_(std::move(pmid)), genes_(genes), mentions_(mentions) {}

  void Sentence(std::string_view tmpl, const std::array<std::size_t, 4> &slots) {
    if (!text_.empty()) Emit(" ");
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
      if (tmpl[i] == '{' && i + 2 < tmpl.size() && tmpl[i + 2] == '}') {
        std::size_t slot = std::string_view("ABXY").find(tmpl[i + 1]);
        const Gene &g = genes_[slots[slot]];
        GeneMention m;
        m.pmid = pmid_;
        m.start = length_;
        Emit(g.symbol);
        m.end = length_;
        m.surface = g.symbol;
        m.ncbi_id = g.id;
        mentions_.push_back(std::move(m));
        i += 2;
      } else {
        std::size_t next = tmpl.find('{', i + 1);
        if (next == std::string_view::npos) next = tmpl.size();
        Emit(tmpl.substr(i, next - i));
        i = next - 1;
      }
    }
  }

  // A mention of a gene id that the map does not know.
  void UnmappedSentence(std::size_t n) {
    if (!text_.empty()) Emit(" ");
    Emit("A homologue of ");
    GeneMention m;
    m.pmid = pmid_;
    m.start = length_;
    m.surface = "ORF" + std::to_string(n);
    Emit(m.surface);
    m.end = length_;
    m.ncbi_id = "99" + std::to_string(1000000 + n);
    mentions_.push_back(std::move(m));
    Emit(" was also detected.");
  }

  std::string Take() { return std::move(text_); }

 private:
  void Emit(std::string_view s) {
    text_.append(s);
    length_ += utf8::Length(s);
  }

  std::string pmid_;
  const std::vector<Gene> &genes_;
  std::vector<GeneMention> &mentions_;
  std::string text_;
  std::size_t length_ = 0;
};

IT PickClass(Rng &rng) {
  double u = rng.Unit(), acc = 0;
  for (const Templates &t : kTriggers) {
    acc += t.weight;
    if (u < acc) return t.cls;
  }
  return IT::kPhosphorylation;
}

const Templates &TemplatesFor(IT cls) {
  for (const Templates &t : kTriggers) {
    if (t.cls == cls) return t;
  }
  throw ValidationError("no templates for class");
}

// `count` distinct gene indices.
std::vector<std::size_t> PickGenes(Rng &rng, std::size_t pool, std::size_t count) {
  std::vector<std::size_t> out;
  while (out.size() < count) {
    std::size_t g = rng.Below(pool);
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  return out;
}

}  // namespace

Corpus Generate(const CorpusOptions &options) {
  if (options.documents == 0) throw ValidationError("corpus needs at least one document");
  Rng rng(options.seed);
  const std::size_t pool = options.genes ? options.genes : std::max<std::size_t>(40, options.documents / 2);
  if (pool < 6) throw ValidationError("gene pool must hold at least 6 genes");
  if (pool > 99999) throw ValidationError("gene pool is limited to 99999 genes");

  std::vector<Gene> genes(pool);
  Corpus corpus;
  for (std::size_t i = 0; i < pool; ++i) {
    Gene &g = genes[i];
    g.id = std::to_string(1000 + i);
    g.symbol = std::string(kSymbolPrefixes[i % kSymbolPrefixes.size()]) + std::to_string(i);
    const std::size_t n = 1 + rng.Below(3);
    char num[8];
    std::snprintf(num, sizeof(num), "%05zu", i);
    for (std::size_t j = 0; j < n; ++j) g.accessions.push_back(std::string(1, "PQO"[j]) + num);
    // Shuffle so the first listed accession is not always the P form.
    StableShuffle(g.accessions, rng.engine());
    corpus.map.Add(g.id, g.accessions);
  }

  auto acc_of = [&](std::size_t g) {
    const auto &list = genes[g].accessions;
    return list[rng.Below(list.size())];
  };
  auto filler = [&](DocBuilder &doc, std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
    doc.Sentence(kFillers[rng.Below(kFillers.size())], {a, b, x, y});
  };

  // Planted interactions recur across abstracts, as well-studied ones do.
  struct Planted {
    std::size_t a, b;
    IT cls;
  };
  std::vector<Planted> planted(std::max<std::size_t>(8, options.documents / 4));
  for (Planted &p : planted) {
    auto g = PickGenes(rng, pool, 2);
    p = {g[0], g[1], PickClass(rng)};
  }
  // Participants first, then `extra` distractors distinct from them.
  auto pick_planted = [&](std::size_t extra) {
    const Planted &p = planted[rng.Below(planted.size())];
    std::vector<std::size_t> g = {p.a, p.b};
    while (g.size() < 2 + extra) {
      std::size_t x = rng.Below(pool);
      if (std::find(g.begin(), g.end(), x) == g.end()) g.push_back(x);
    }
    return std::make_pair(g, p.cls);
  };

  std::set<std::string> reference;
  std::size_t unmapped_n = 0;
  for (std::size_t d = 0; d < options.documents; ++d) {
    const std::string pmid = std::to_string(10000000 + d);
    DocBuilder doc(pmid, genes, corpus.mentions);
    const double u = rng.Unit();
    const double clean_end = options.clean_fraction;
    const double crowded_end = clean_end + options.crowded_fraction;
    const double noise_end = crowded_end + options.kb_noise_fraction;

    if (u < clean_end) {
      auto [g, cls] = pick_planted(0);
      const Templates &t = TemplatesFor(cls);
      filler(doc, g[0], g[1], g[0], g[1]);
      const std::size_t triggers = 2 + rng.Below(2);
      for (std::size_t k = 0; k < triggers; ++k) doc.Sentence(t.sentences[k % 2], {g[0], g[1], g[0], g[1]});
      filler(doc, g[1], g[0], g[0], g[1]);
      std::string a = acc_of(g[0]), b = acc_of(g[1]);
      corpus.kb.push_back({pmid, a, b, cls});
      if (rng.Chance(0.03)) corpus.kb.push_back({pmid, b, a, cls});  // duplicate, swapped
    } else if (u < crowded_end) {
      const std::size_t extra = 1 + rng.Below(3);
      auto [g, cls] = pick_planted(extra);
      IT other = PickClass(rng);
      if (other == cls) other = cls == IT::kMethylation ? IT::kPhosphorylation : IT::kMethylation;
      filler(doc, g[2], g[extra > 1 ? 3 : 0], g[0], g[1]);
      doc.Sentence(TemplatesFor(cls).sentences[rng.Below(2)], {g[0], g[1], g[2], g[0]});
      // Competing trigger between a distractor and a participant or another
      // distractor.
      const std::size_t partner = extra > 1 ? g[3] : g[0];
      doc.Sentence(TemplatesFor(other).sentences[rng.Below(2)], {g[2], partner, g[2], g[2]});
      for (std::size_t k = 4; k < g.size(); ++k) filler(doc, g[k], g[2], g[0], g[1]);
      std::string a = acc_of(g[0]), b = acc_of(g[1]);
      corpus.kb.push_back({pmid, a, b, cls});
    } else if (u < noise_end) {
      auto g = PickGenes(rng, pool, 3);
      const IT cls = PickClass(rng);
      switch (rng.Below(3)) {
        case 0:  // no trigger word at all
          filler(doc, g[0], g[1], g[0], g[1]);
          filler(doc, g[1], g[0], g[0], g[1]);
          corpus.kb.push_back({pmid, acc_of(g[0]), acc_of(g[1]), cls});
          break;
        case 1:  // the second participant is never mentioned
          doc.Sentence(TemplatesFor(cls).sentences[0], {g[0], g[1], g[0], g[1]});
          filler(doc, g[0], g[1], g[0], g[1]);
          corpus.kb.push_back({pmid, acc_of(g[0]), acc_of(g[2]), cls});
          break;
        default:  // self relation next to a valid one
          doc.Sentence(TemplatesFor(cls).sentences[0], {g[0], g[1], g[0], g[1]});
          doc.Sentence(TemplatesFor(cls).sentences[1], {g[0], g[1], g[0], g[1]});
          {
            std::string a = acc_of(g[0]);
            corpus.kb.push_back({pmid, a, a, cls});
            corpus.kb.push_back({pmid, a, acc_of(g[1]), cls});
          }
          break;
      }
    } else {
      auto g = PickGenes(rng, pool, 3);
      filler(doc, g[0], g[1], g[1], g[2]);
      filler(doc, g[2], g[0], g[0], g[1]);
    }
    if (rng.Chance(options.unmapped_rate)) doc.UnmappedSentence(unmapped_n++);
    corpus.documents.push_back({pmid, doc.Take()});
  }

  // Half of the planted interactions, keyed by the accession inference picks
  // (the first listed).
  for (const Planted &p : planted) {
    if (!rng.Chance(0.5)) continue;
    const std::string &a = genes[p.a].accessions[0], &b = genes[p.b].accessions[0];
    reference.insert(std::min(a, b) + "\t" + std::string(ClassName(p.cls)) + "\t" + std::max(a, b));
  }
  // A few reference rows the predictor can never find, plus rows lacking an
  // accession.
  const std::size_t extras = std::max<std::size_t>(2, reference.size() / 10);
  for (std::size_t k = 0; k < extras; ++k) {
    auto g = PickGenes(rng, pool, 2);
    std::string a = genes[g[0]].accessions[0], b = genes[g[1]].accessions[0];
    reference.insert(std::min(a, b) + "\t" + std::string(ClassName(PickClass(rng))) + "\t" + std::max(a, b));
  }
  corpus.reference_rows.assign(reference.begin(), reference.end());
  corpus.reference_rows.push_back("-\tphosphorylation\t" + genes[0].accessions[0]);
  corpus.reference_rows.push_back(genes[1].accessions[0] + "\tmethylation\t-");
  return corpus;
}

void WriteCorpus(const Corpus &corpus, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char *name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("docs.jsonl");
    WriteDocuments(out, corpus.documents);
  }
  {
    auto out = open("mentions.tsv");
    WriteMentions(out, corpus.mentions);
  }
  {
    auto out = open("map.tsv");
    WriteGeneProteinMap(out, corpus.map);
  }
  {
    auto out = open("kb.tsv");
    WriteKbRecords(out, corpus.kb);
  }
  {
    auto out = open("reference.tsv");
    for (const std::string &row : corpus.reference_rows) out << row << '\n';
  }
}

}  // namespace ptmx::synth
