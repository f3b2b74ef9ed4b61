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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "ptmx/aggregation.h"
#include "ptmx/calibration.h"
#include "ptmx/corpus_io.h"
#include "ptmx/curation.h"
#include "ptmx/dataset.h"
#include "ptmx/evaluation.h"
#include "ptmx/scoring.h"
#include "ptmx/text.h"
#include "ptmx/transform.h"
#include "synthetic_corpus.h"
#include "test_support.h"

namespace ptmx {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using T = InteractionType;

// Collects failed checks of one criterion.
class Check {
 public:
  void That(bool ok, const std::string &what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ |= !ok;
  }
  void Near(double got, double want, double tol, const std::string &what) {
    That(std::fabs(got - want) <= tol,
         what + ": got " + FormatDouble(got) + ", want " + FormatDouble(want));
  }
  bool ok() const { return !failed_; }
  std::string failures() const {
    std::string s;
    for (const auto &f : failures_) s += (s.empty() ? "" : "; ") + f;
    return s;
  }
  std::string note;

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

template <typename Parsed, typename Fn>
Parsed LoadFixture(const std::string &rel, Fn parse) {
  std::istringstream in(test::ReadFile(test::FixturePath(rel)));
  return parse(in, rel);
}

// --- metrics ---------------------------------------------------------------

void Metrics(Check &c) {
  const auto start = Clock::now();
  auto rows = test::ReadTsv(test::FixturePath("metrics/reported_prf.tsv"));
  for (const std::string split : {"test", "val"}) {
    std::vector<Prf> per_class;
    Prf macro_row;
    for (const auto &r : rows) {
      if (r[0] != split) continue;
      Prf p{std::stod(r[2]) / 100, std::stod(r[3]) / 100, std::stod(r[4]) / 100};
      if (r[1] == "macro") {
        macro_row = p;
      } else if (r[1] != "micro") {
        per_class.push_back(p);
      }
    }
    Prf macro = MacroAverage(per_class);
    if (split == "test") {
      c.Near(100 * macro.precision, 47.50, 0.01, "test macro P");
      c.Near(100 * macro.recall, 35.15, 0.01, "test macro R");
      c.Near(100 * macro.f1, 38.82, 0.01, "test macro F1");
    }
  }
  Prf test_micro = MicroFromCounts(18, 13, 38);
  c.Near(100 * test_micro.precision, 58.06, 0.01, "test micro P");
  c.Near(100 * test_micro.recall, 32.14, 0.01, "test micro R");
  c.Near(100 * test_micro.f1, 41.38, 0.01, "test micro F1");
  Prf val_micro = MicroFromCounts(17, 7, 17);
  c.Near(100 * val_micro.precision, 70.83, 0.01, "val micro P");
  c.Near(100 * val_micro.recall, 50.00, 0.01, "val micro R");
  c.Near(100 * val_micro.f1, 58.62, 0.01, "val micro F1");
  const double secs = Seconds(start);
  c.That(secs < 1.0, "runtime " + FormatDouble(secs) + " s");
  c.note = "test micro " + FormatFixed(100 * test_micro.precision, 2) + "/" +
           FormatFixed(100 * test_micro.recall, 2) + "/" + FormatFixed(100 * test_micro.f1, 2) +
           ", val micro " + FormatFixed(100 * val_micro.precision, 2) + "/" +
           FormatFixed(100 * val_micro.recall, 2) + "/" + FormatFixed(100 * val_micro.f1, 2);
}

// --- ensemble math ---------------------------------------------------------

void EnsembleMath(Check &c) {
  ClassDistribution m1{}, m2{};
  m1[0] = 0.6;
  m1[1] = 0.4;
  m2[0] = 0.8;
  m2[1] = 0.2;
  auto p = Aggregate("1:A:B", "1", ProteinPair("A", "B"), {m1, m2});
  c.Near(p.mean[0], 0.7, 1e-9, "mean[0]");
  c.Near(p.mean[1], 0.3, 1e-9, "mean[1]");
  c.Near(p.conf, 0.7, 1e-9, "confidence");
  c.Near(p.std, 0.1, 1e-9, "std");
  c.That(p.pred == T::kNegative, "argmax");

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0, 1);
  std::size_t checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ClassDistribution> members(1 + trial % 12);
    for (auto &m : members) {
      double total = 0;
      for (double &v : m) total += v = unit(rng);
      for (double &v : m) v /= total;
    }
    std::vector<ClassDistribution> same(members.size(), members[0]);
    auto id = Aggregate("x", "1", ProteinPair("A", "B"), same);
    c.That(id.std == 0.0, "identical members std " + FormatDouble(id.std));
    auto base = Aggregate("x", "1", ProteinPair("A", "B"), members);
    for (int k = 0; k < 10; ++k) {
      std::shuffle(members.begin(), members.end(), rng);
      auto again = Aggregate("x", "1", ProteinPair("A", "B"), members);
      c.That(again.mean == base.mean && again.pred == base.pred && again.conf == base.conf &&
                 again.std == base.std,
             "permutation changed output");
      ++checked;
    }
  }
  c.note = "hand example conf " + FormatDouble(p.conf) + " std " + FormatDouble(p.std) + ", " +
           std::to_string(checked) + " permutations bit-identical";
}

// --- ECE -------------------------------------------------------------------

void Ece(Check &c) {
  std::vector<ConfidenceOutcome> k1 = {{0.8, true}, {0.6, false}};
  std::vector<ConfidenceOutcome> k2 = {{0.9, true}, {0.9, false}, {0.3, true}};
  double e1 = ComputeEce(k1, 1).ece;
  double e2 = ComputeEce(k2, 2).ece;
  c.Near(e1, 0.2, 1e-9, "K=1");
  c.Near(e2, 0.5, 1e-9, "K=2");

  // Calibrated: in every bin the hit rate equals the confidence.
  std::vector<ConfidenceOutcome> calibrated;
  for (int b = 1; b <= 10; ++b) {
    for (int i = 0; i < 10; ++i) calibrated.push_back({b / 10.0, i < b});
  }
  double e3 = ComputeEce(calibrated).ece;
  c.Near(e3, 0.0, 1e-9, "calibrated");
  std::vector<ConfidenceOutcome> over;
  for (int i = 0; i < 1000; ++i) over.push_back({0.9, i % 2 == 0});
  double e4 = ComputeEce(over).ece;
  c.Near(e4, 0.4, 1e-9, "overconfident");
  c.note = "K=1 " + FormatDouble(e1) + ", K=2 " + FormatDouble(e2) + ", calibrated " +
           FormatDouble(e3) + ", overconfident " + FormatDouble(e4);
}

// --- worked abstract -------------------------------------------------------

void WorkedAbstract(Check &c) {
  auto kb = LoadFixture<std::vector<KbRecord>>("abstract_example/kb.tsv", ParseKbRecords);
  auto docs = LoadFixture<std::vector<Document>>("abstract_example/docs.jsonl", ParseDocuments);
  auto mentions = LoadFixture<std::vector<GeneMention>>("abstract_example/mentions.tsv", ParseMentions);
  auto map = LoadFixture<GeneProteinMap>("abstract_example/map.tsv", ParseGeneProteinMap);
  Dataset ds = BuildDataset(kb, docs, mentions, map, BuildOptions{});
  std::vector<const LabeledSample *> pos, neg;
  for (const auto &s : ds.samples) (IsPositive(s.label) ? pos : neg).push_back(&s);
  c.That(pos.size() == 1, std::to_string(pos.size()) + " positives");
  if (pos.size() == 1) {
    c.That(pos[0]->label == T::kPhosphorylation, "positive label");
    c.That(pos[0]->pair == ProteinPair("P04150", "P31749"), "positive pair");
    c.That(ContainsWholeWord(pos[0]->text, "P31749") && ContainsWholeWord(pos[0]->text, "P04150"),
           "positive text lacks accessions");
  }
  std::set<ProteinPair> neg_pairs;
  for (const auto *s : neg) neg_pairs.insert(s->pair);
  c.That(neg.size() == 2, std::to_string(neg.size()) + " negatives");
  c.That(neg_pairs == std::set<ProteinPair>{ProteinPair("P04150", "P60484"),
                                            ProteinPair("P31749", "P60484")},
         "negative pairs");
  c.note = std::to_string(pos.size()) + " positive, " + std::to_string(neg.size()) +
           " negatives (P04150,P60484) (P31749,P60484)";
}

// --- leakage ---------------------------------------------------------------

void Leakage(Check &c) {
  std::mt19937_64 rng(2024);
  double worst = 0;
  std::size_t samples = 0;
  for (int corpus = 0; corpus < 200; ++corpus) {
    synth::CorpusOptions o;
    o.documents = 40 + rng() % 160;
    o.seed = 1000 + corpus;
    o.crowded_fraction = 0.1 + 0.5 * (rng() % 100) / 100.0;
    o.clean_fraction = 0.3 + 0.4 * (rng() % 100) / 100.0;
    synth::Corpus corp = synth::Generate(o);
    BuildOptions b;
    const double train = 0.5 + 0.3 * (rng() % 100) / 100.0;
    const double val = (1 - train) * (0.2 + 0.5 * (rng() % 100) / 100.0);
    b.ratios.fractions = {train, val, 1 - train - val};
    b.seed = rng();
    Dataset ds = BuildDataset(corp.kb, corp.documents, corp.mentions, corp.map, b);
    if (ds.report.documents_used < kNumSplits) continue;
    std::map<std::string, std::set<Split>> splits;
    std::map<std::string, std::size_t> per_doc;
    std::array<double, kNumSplits> size{};
    for (const auto &s : ds.samples) {
      splits[s.pmid].insert(s.split);
      ++per_doc[s.pmid];
      size[static_cast<std::size_t>(s.split)] += 1;
    }
    for (const auto &[pmid, set] : splits) {
      c.That(set.size() == 1, "corpus " + std::to_string(corpus) + ": pmid " + pmid +
                                  " in several splits");
    }
    std::size_t largest = 0;
    for (const auto &[pmid, n] : per_doc) largest = std::max(largest, n);
    for (std::size_t s = 0; s < kNumSplits; ++s) {
      const double target = b.ratios.fractions[s] * ds.samples.size();
      const double dev = std::fabs(size[s] - target) / largest;
      worst = std::max(worst, dev);
      c.That(dev <= 1.0, "corpus " + std::to_string(corpus) + " split " +
                             std::string(SplitName(static_cast<Split>(s))) + " off by " +
                             FormatDouble(dev) + " documents");
    }
    samples += ds.samples.size();
  }
  c.note = "200 corpora, " + std::to_string(samples) +
           " samples, worst split deviation " + FormatFixed(worst, 3) + " of the largest document";
}

// --- pair enumeration ------------------------------------------------------

void Pairs(Check &c) {
  for (std::size_t n = 0; n <= 50; ++n) {
    std::set<std::string> proteins;
    std::vector<std::string> items;
    for (std::size_t i = 0; i < n; ++i) {
      items.push_back("Q" + std::to_string(100 + i * 37 % 101));
      proteins.insert(items.back());
    }
    auto pairs = EnumeratePairs(proteins);
    c.That(pairs.size() == n * (n - 1) / 2 || (n == 0 && pairs.empty()),
           "n=" + std::to_string(n) + " count " + std::to_string(pairs.size()));
    std::set<std::pair<std::string, std::string>> got;
    for (const auto &p : pairs) {
      c.That(p.low() != p.high(), "self pair");
      got.emplace(p.low(), p.high());
    }
    c.That(got.size() == pairs.size(), "duplicate pair at n=" + std::to_string(n));
    c.That(got == oracle::AllPairs(items), "oracle mismatch at n=" + std::to_string(n));
  }
  c.note = "n = 0..50 match the double loop";
}

// --- filtering -------------------------------------------------------------

std::vector<PredictionRecord> ScoreSamples(const std::vector<LabeledSample> &samples, int models,
                                           std::uint64_t seed) {
  std::vector<TransformedInput> inputs;
  for (const auto &s : samples) {
    TransformedInput t = MaskSample(s);
    t.text = Truncate(t.text, 510);
    inputs.push_back(std::move(t));
  }
  StubOptions stub;
  stub.seed = seed;
  std::vector<std::unique_ptr<Scorer>> owned;
  std::vector<Scorer *> scorers;
  for (int m = 1; m <= models; ++m) {
    owned.push_back(std::make_unique<StubScorer>(m, stub));
    scorers.push_back(owned.back().get());
  }
  std::vector<PredictionRecord> out;
  for (const auto &raw : RunEnsemble(inputs, scorers, EnsembleOptions{})) {
    out.push_back(Aggregate(raw));
  }
  return out;
}

void Filter(Check &c) {
  double min_lift = 1, sum_all = 0, sum_hq = 0;
  std::size_t chains = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    synth::CorpusOptions o;
    o.documents = 300;
    o.seed = 500 + seed;
    synth::Corpus corp = synth::Generate(o);
    BuildOptions b;
    b.seed = seed;
    Dataset ds = BuildDataset(corp.kb, corp.documents, corp.mentions, corp.map, b);
    std::vector<LabeledSample> train, eval;
    for (const auto &s : ds.samples) (s.split == Split::kTrain ? train : eval).push_back(s);
    auto train_preds = ScoreSamples(train, 3, seed);
    auto eval_preds = ScoreSamples(eval, 3, seed);
    GoldLabels gold = [&] {
      GoldLabels g;
      for (const auto &s : eval) g[s.id()] = s.label;
      return g;
    }();
    ThresholdProfile prof = LearnThresholds(train_preds);

    auto precision = [&](const std::vector<PredictionRecord> &preds, std::size_t *n) {
      std::size_t tp = 0, pos = 0;
      for (const auto &p : preds) {
        if (!IsPositive(p.pred)) continue;
        ++pos;
        tp += gold.at(p.id) == p.pred;
      }
      *n = pos;
      return pos ? static_cast<double>(tp) / pos : 0.0;
    };
    std::size_t n_all = 0, n_hq = 0;
    auto hq = FilterHighQuality(eval_preds, prof);
    auto lq = PartitionLowQuality(eval_preds, prof);
    const double p_all = precision(eval_preds, &n_all);
    const double p_hq = precision(hq, &n_hq);
    const std::string tag = "seed " + std::to_string(seed);
    c.That(n_hq > 0, tag + ": no high-quality predictions");
    c.That(p_hq >= p_all, tag + ": precision " + FormatFixed(p_all, 3) + " -> " +
                              FormatFixed(p_hq, 3));
    min_lift = std::min(min_lift, p_hq - p_all);
    sum_all += p_all;
    sum_hq += p_hq;

    std::set<std::string> hq_ids, lq_ids;
    for (const auto &p : hq) hq_ids.insert(p.id);
    for (const auto &p : lq) lq_ids.insert(p.id);
    for (const auto &id : lq_ids) c.That(!hq_ids.count(id), tag + ": " + id + " in both sets");

    // Tightening chain: each step raises conf cut-offs and lowers std cut-offs.
    std::set<std::string> previous = hq_ids;
    for (int step = 1; step <= 8; ++step) {
      ThresholdProfile tight = prof;
      for (auto &cls : tight.classes) {
        if (!cls) continue;
        cls->conf_cutoff += step * 0.02;
        cls->std_cutoff *= 1.0 - step * 0.1;
      }
      std::set<std::string> now;
      for (const auto &p : FilterHighQuality(eval_preds, tight)) now.insert(p.id);
      c.That(std::includes(previous.begin(), previous.end(), now.begin(), now.end()),
             tag + ": tightening added predictions at step " + std::to_string(step));
      previous = std::move(now);
      ++chains;
    }
  }
  c.note = "50 seeds, mean positive precision " + FormatFixed(sum_all / 50, 3) + " -> " +
           FormatFixed(sum_hq / 50, 3) + " after filtering, minimum lift " +
           FormatFixed(min_lift, 3) + ", " + std::to_string(chains) + " tightening steps nested";
}

// --- aggregation -----------------------------------------------------------

std::string KeyString(const TripletKey &k) {
  return k.low + "|" + std::string(ClassName(k.ptm)) + "|" + k.high;
}

void MetadataFixtures(Check &c) {
  auto t5 = test::ReadTsv(test::FixturePath("metadata/triplet_counts.tsv"));
  std::array<long, 6> sums{};
  std::array<long, 6> total{};
  for (const auto &r : t5) {
    std::array<long, 6> v{};
    for (int i = 0; i < 6; ++i) v[i] = std::stol(r[1 + i]);
    if (r[0] == "total") {
      total = v;
      continue;
    }
    c.That(ParsePositiveClassName(r[0]).has_value(), "triplet counts class " + r[0]);
    c.That(v[1] <= v[0] && v[2] <= v[0] && v[3] <= v[2] && v[4] <= v[2] && v[5] <= v[4] &&
               v[5] <= v[3],
           "triplet counts ordering for " + r[0]);
    for (int i = 0; i < 6; ++i) sums[i] += v[i];
  }
  c.That(sums == total, "triplet counts total row");
  c.That(total[0] == 1599872 && total[1] == 546507, "triplet counts corpus totals");

  for (const auto &r : test::ReadTsv(test::FixturePath("metadata/reference_recall.tsv"))) {
    std::array<long, 6> v{};
    for (int i = 0; i < 6; ++i) v[i] = std::stol(r[1 + i]);
    c.That(v[1] <= v[0] && v[2] <= v[1] && v[3] <= v[2] && v[4] <= v[3] && v[5] <= v[4],
           "reference recall ordering for " + r[0]);
    if (r[0] == "phosphorylation") {
      c.Near(100.0 * v[3] / v[2], 37.1, 0.05, "reference recall phosphorylation recall");
    }
  }

  auto t2 = test::ReadTsv(test::FixturePath("metadata/dataset_sizes.tsv"));
  std::array<long, 8> col{}, tot{};
  for (const auto &r : t2) {
    std::array<long, 8> v{};
    for (int i = 0; i < 8; ++i) v[i] = std::stol(r[1 + i]);
    if (r[0] == "total") {
      tot = v;
      continue;
    }
    c.That(v[0] + v[2] + v[4] == v[6] && v[1] + v[3] + v[5] == v[7], "dataset sizes row " + r[0]);
    for (int i = 0; i < 8; ++i) col[i] += v[i];
  }
  c.That(col == tot, "dataset sizes total row");
  c.That(tot[6] == 1578 && tot[7] == 279, "dataset sizes totals");
}

void Aggregation(Check &c) {
  std::size_t streams = 0, triplets = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<PredictionRecord> preds;
    std::vector<oracle::Mention> mirror;
    for (int i = 0; i < 1000; ++i) {
      std::string a = "P" + std::to_string(rng() % 25);
      std::string b = "P" + std::to_string(rng() % 25);
      if (a == b) b = "Q" + b;
      T cls = ClassFromIndex(rng() % kNumClasses);
      PredictionRecord p;
      p.pmid = std::to_string(1 + rng() % 60);
      p.pair = ProteinPair(a, b);
      p.id = SampleId(p.pmid, p.pair);
      p.pred = cls;
      p.conf = static_cast<double>(rng() % 1000) / 1000;
      p.std = static_cast<double>(rng() % 1000) / 4000;
      preds.push_back(p);
      mirror.push_back({a, b, std::string(ClassName(cls)), p.pmid, IsPositive(cls)});
    }
    auto want = oracle::Triplets(mirror);
    auto got = AggregateTriplets(preds);
    std::map<std::string, std::set<std::string>> seen;
    for (const auto &t : got) {
      std::set<std::string> pmids;
      for (const auto &e : t.evidence) pmids.insert(e.pmid);
      c.That(pmids.size() == t.evidence.size(), "duplicate pmid evidence");
      c.That(seen.emplace(KeyString(t.key), pmids).second, "duplicate triplet");
    }
    c.That(seen == want, "seed " + std::to_string(seed) + ": triplets differ from oracle");
    for (std::size_t min : {2u, 3u}) {
      std::set<std::string> kept, oracle_kept;
      for (const auto &t : FilterMultiAbstract(got, min)) kept.insert(KeyString(t.key));
      for (const auto &[k, pmids] : want) {
        if (pmids.size() >= min) oracle_kept.insert(k);
      }
      c.That(kept == oracle_kept, "multi-abstract filter differs at " + std::to_string(min));
    }
    // Swapping participants leaves every triplet unchanged.
    auto swapped = preds;
    for (auto &p : swapped) p.pair = ProteinPair(p.pair.high(), p.pair.low());
    c.That(AggregateTriplets(swapped) == got, "pair order matters");
    for (int k = 0; k < 10; ++k) {
      std::shuffle(preds.begin(), preds.end(), rng);
      c.That(AggregateTriplets(preds) == got, "permutation changed triplets");
    }
    ++streams;
    triplets += got.size();
  }
  MetadataFixtures(c);
  c.note = std::to_string(streams) + " streams of 1000 predictions, " + std::to_string(triplets) +
           " triplets, 10 permutations each; corpus-scale table fixtures consistent";
}

// --- determinism and throughput --------------------------------------------

void RunPipeline(Check &c, const fs::path &corpus, const fs::path &out) {
  auto run = [&](std::vector<std::string> args) {
    auto r = test::RunCli(args);
    c.That(r.code == 0, args[0] + " exited " + std::to_string(r.code) + ": " + r.err);
  };
  auto p = [&](const std::string &name) { return (out / name).string(); };
  auto in = [&](const std::string &name) { return (corpus / name).string(); };
  run({"build-dataset", "--kb", in("kb.tsv"), "--docs", in("docs.jsonl"), "--mentions",
       in("mentions.tsv"), "--map", in("map.tsv"), "--ratios", "0.7,0.1,0.2", "--seed", "7",
       "--out", p("data")});
  for (const std::string s : {"train", "test"}) {
    run({"transform", "--dataset", p("data/" + s + ".jsonl"), "--out", p("in_" + s + ".jsonl")});
    run({"score", "--inputs", p("in_" + s + ".jsonl"), "--models", "3", "--seed", "7", "--out",
         p("raw_" + s + ".jsonl")});
    run({"calibrate", "--preds", p("raw_" + s + ".jsonl"), "--out", p("preds_" + s + ".jsonl")});
  }
  run({"learn-thresholds", "--preds", p("preds_train.jsonl"), "--out", p("profile.json")});
  run({"evaluate", "--preds", p("preds_test.jsonl"), "--gold", p("data/test.jsonl"), "--out",
       p("eval")});
  run({"transform", "--docs", in("docs.jsonl"), "--mentions", in("mentions.tsv"), "--map",
       in("map.tsv"), "--out", p("in_all.jsonl"), "--normalized-out", p("norm.jsonl")});
  run({"score", "--inputs", p("in_all.jsonl"), "--models", "3", "--seed", "7", "--out",
       p("raw_all.jsonl")});
  run({"calibrate", "--preds", p("raw_all.jsonl"), "--out", p("preds_all.jsonl")});
  run({"filter", "--preds", p("preds_all.jsonl"), "--profile", p("profile.json"), "--out",
       p("hq.jsonl"), "--low-quality-out", p("lq.jsonl")});
  run({"aggregate", "--preds", p("hq.jsonl"), "--min-evidence", "2", "--out",
       p("triplets_ma.jsonl"), "--all-out", p("triplets.jsonl"), "--report", p("counts.json")});
  run({"compare-reference", "--triplets", p("triplets.jsonl"), "--reference",
       in("reference.tsv"), "--out", p("recall.json")});
}

std::map<std::string, std::string> Tree(const fs::path &dir) {
  std::map<std::string, std::string> out;
  for (const auto &e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = test::ReadFile(e.path());
  }
  return out;
}

void Throughput(Check &c) {
  test::TempDir work;
  synth::CorpusOptions o;
  o.documents = 100000;
  o.seed = 7;
  synth::WriteCorpus(synth::Generate(o), work / "corpus");
  std::array<double, 2> secs{};
  for (int run = 0; run < 2; ++run) {
    const auto start = Clock::now();
    RunPipeline(c, work / "corpus", work / ("run" + std::to_string(run)));
    secs[run] = Seconds(start);
    c.That(secs[run] < 600, "run " + std::to_string(run) + " took " + FormatFixed(secs[run], 1) + " s");
  }
  auto a = Tree(work / "run0");
  auto b = Tree(work / "run1");
  c.That(a.size() == b.size() && a.size() > 10, "output file sets differ");
  std::size_t bytes = 0;
  for (const auto &[name, content] : a) {
    auto it = b.find(name);
    c.That(it != b.end() && it->second == content, name + " differs between runs");
    bytes += content.size();
  }
  std::size_t lines = 0;
  for (char ch : a["preds_all.jsonl"]) lines += ch == '\n';
  c.note = "100000 documents, " + std::to_string(lines - 1) + " scored pairs, runs " +
           FormatFixed(secs[0], 1) + " s and " + FormatFixed(secs[1], 1) + " s, " +
           std::to_string(a.size()) + " files (" + std::to_string(bytes >> 20) +
           " MiB) byte-identical";
}

// --- curation --------------------------------------------------------------

void Curation(Check &c) {
  auto sampled = test::ExpandOutcomeTable(test::FixturePath("curation/sampled_review.tsv"));
  test::TempDir dir;
  StoreOptions so;
  so.snapshot_every = 25;
  so.clock = [] { return std::string("2024-05-01T00:00:00Z"); };

  // A child records every verdict, starts one more write and dies mid-line.
  pid_t pid = fork();
  if (pid == 0) {
    try {
      auto store = CurationStore::Open(dir.path(), so);
      for (const auto &r : sampled) store->LoadItems(std::vector<CurationItem>{r.item});
      for (const auto &r : sampled) store->RecordVerdict(r.verdict);
      std::ofstream(dir / "events.jsonl", std::ios::app) << R"({"event":"verdict","item_)";
    } catch (...) {
      _exit(3);
    }
    ::kill(::getpid(), SIGKILL);
    _exit(4);
  }
  int status = 0;
  waitpid(pid, &status, 0);
  c.That(WIFSIGNALED(status) && WTERMSIG(status) == SIGKILL, "child did not crash as planned");

  // Reference state built without interruption.
  test::TempDir clean;
  auto expect = CurationStore::Open(clean.path(), so);
  for (const auto &r : sampled) expect->LoadItems(std::vector<CurationItem>{r.item});
  for (const auto &r : sampled) expect->RecordVerdict(r.verdict);

  auto replayed = CurationStore::Open(dir.path(), so);
  c.That(replayed->discarded_bytes() > 0, "torn tail not detected");
  c.That(replayed->Items() == expect->Items(), "replayed items differ");
  c.That(replayed->Report() == expect->Report(), "replayed report differs");
  c.That(ReportFromLog(dir / "events.jsonl") == expect->Report(), "log-only report differs");

  const PrecisionRow &r6 = replayed->Report().overall;
  c.That(r6.correct == 28 && r6.incorrect == 53 && r6.unsure == 2, "sampled review counts");
  c.That(r6.inclusive_precision() == 28.0 / 83, "sampled review inclusive");
  c.That(FormatFixed(100 * *r6.inclusive_precision(), 1) == "33.7", "sampled review 33.7%");
  c.That(FormatFixed(100 * *r6.strict_precision(), 1) == "34.6", "sampled review strict 34.6%");

  test::TempDir dir7;
  auto store7 = CurationStore::Open(dir7.path(), so);
  for (const auto &r : test::ExpandOutcomeTable(test::FixturePath("curation/multi_abstract_review.tsv"))) {
    store7->LoadItems(std::vector<CurationItem>{r.item});
    store7->RecordVerdict(r.verdict);
  }
  const PrecisionRow &r7 = store7->Report().overall;
  c.That(r7.correct == 20 && r7.incorrect == 10 && r7.unsure == 4, "multi-abstract review counts");
  c.That(r7.inclusive_precision() == 20.0 / 34, "multi-abstract review inclusive");
  c.That(FormatFixed(100 * *r7.inclusive_precision(), 1) == "58.8", "multi-abstract review 58.8%");
  c.That(FormatFixed(100 * *r7.strict_precision(), 1) == "66.7", "multi-abstract review strict 66.7%");
  c.note = "replay after SIGKILL identical (" + std::to_string(replayed->event_count()) +
           " events, " + std::to_string(replayed->discarded_bytes()) +
           " torn bytes dropped); 28/83 = " + FormatFixed(100 * *r6.inclusive_precision(), 1) +
           "%, 20/34 = " + FormatFixed(100 * *r7.inclusive_precision(), 1) + "%";
}

struct Criterion {
  const char *name;
  std::function<void(Check &)> run;
};

}  // namespace
}  // namespace ptmx

int main() {
  using namespace ptmx;
  const std::vector<Criterion> criteria = {
      {"metrics reproduction", Metrics},
      {"ensemble math", EnsembleMath},
      {"calibration error", Ece},
      {"dataset construction", WorkedAbstract},
      {"leakage safety", Leakage},
      {"pair enumeration", Pairs},
      {"filter behavior", Filter},
      {"triplet aggregation", Aggregation},
      {"curation service", Curation},
      {"determinism and throughput", Throughput},
  };
  int failed = 0;
  for (const Criterion &cr : criteria) {
    Check check;
    const auto start = Clock::now();
    try {
      cr.run(check);
    } catch (const std::exception &e) {
      check.That(false, std::string("exception: ") + e.what());
    }
    const std::string secs = FormatFixed(Seconds(start), 2);
    if (check.ok()) {
      std::cout << "PASS  " << cr.name << " (" << secs << " s): " << check.note << std::endl;
    } else {
      ++failed;
      std::cout << "FAIL  " << cr.name << " (" << secs << " s): " << check.failures() << std::endl;
    }
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
