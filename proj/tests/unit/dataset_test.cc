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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "oracles.h"
#include "ptmx/corpus_io.h"
#include "ptmx/dataset.h"
#include "ptmx/errors.h"
#include "synthetic_corpus.h"
#include "test_support.h"

namespace ptmx {
namespace {

template <typename T, typename Fn>
T Load(std::string_view rel, Fn parse) {
  std::istringstream in(test::ReadFile(test::FixturePath(rel)));
  return parse(in, std::string(rel));
}

struct Inputs {
  std::vector<KbRecord> kb;
  std::vector<Document> docs;
  std::vector<GeneMention> mentions;
  GeneProteinMap map;
};

Inputs LoadDir(const std::string &dir) {
  Inputs in;
  in.kb = Load<std::vector<KbRecord>>(dir + "/kb.tsv", ParseKbRecords);
  in.docs = Load<std::vector<Document>>(dir + "/docs.jsonl", ParseDocuments);
  in.mentions = Load<std::vector<GeneMention>>(dir + "/mentions.tsv", ParseMentions);
  in.map = Load<GeneProteinMap>(dir + "/map.tsv", ParseGeneProteinMap);
  return in;
}

TEST(Dataset, WorkedAbstractSamples) {
  Inputs in = LoadDir("abstract_example");
  Dataset ds = BuildDataset(in.kb, in.docs, in.mentions, in.map, BuildOptions{});
  ASSERT_EQ(ds.samples.size(), 3u);
  const LabeledSample &pos = ds.samples[0];
  EXPECT_EQ(pos.pair, ProteinPair("P04150", "P31749"));
  EXPECT_EQ(pos.label, InteractionType::kPhosphorylation);
  EXPECT_EQ(pos.others, std::vector<std::string>{"P60484"});
  EXPECT_EQ(pos.id(), "24291004:P04150:P31749");
  EXPECT_NE(pos.text.find("direct phosphorylation of P04150 at position S134"),
            std::string::npos);
  EXPECT_EQ(ds.samples[1].pair, ProteinPair("P04150", "P60484"));
  EXPECT_EQ(ds.samples[2].pair, ProteinPair("P31749", "P60484"));
  for (std::size_t i = 1; i < 3; ++i) {
    EXPECT_EQ(ds.samples[i].label, InteractionType::kNegative);
    EXPECT_EQ(ds.samples[i].text, pos.text);
    EXPECT_EQ(ds.samples[i].split, Split::kTrain);
  }
  EXPECT_EQ(ds.report.positives, 1u);
  EXPECT_EQ(ds.report.negatives, 2u);
  EXPECT_EQ(ds.report.unsplit_documents, 1u);
  EXPECT_EQ(ds.report.negatives_by_source_class[0][ClassIndex(InteractionType::kPhosphorylation)],
            2u);
}

TEST(Dataset, TriggerlessRecordIsDropped) {
  Inputs in = LoadDir("abstract_example");
  in.kb[0].interaction = InteractionType::kMethylation;
  Dataset ds = BuildDataset(in.kb, in.docs, in.mentions, in.map, BuildOptions{});
  EXPECT_TRUE(ds.samples.empty());
  EXPECT_EQ(ds.report.trigger_missing, 1u);
  // Negatives need at least one surviving positive.
  EXPECT_EQ(ds.report.negatives, 0u);
}

TEST(Dataset, AbsentParticipantIsDropped) {
  Inputs in = LoadDir("abstract_example");
  in.kb[0].participant_b = "Q00000";
  Dataset ds = BuildDataset(in.kb, in.docs, in.mentions, in.map, BuildOptions{});
  EXPECT_EQ(ds.report.participant_missing, 1u);
  EXPECT_TRUE(ds.samples.empty());
}

TEST(Dataset, DedupTreatsPairsAsUnordered) {
  KbRecord a{"1", "P1", "P2", InteractionType::kAcetylation};
  KbRecord b{"1", "P2", "P1", InteractionType::kAcetylation};
  KbRecord c{"1", "P2", "P1", InteractionType::kMethylation};
  KbRecord self{"1", "P3", "P3", InteractionType::kMethylation};
  std::vector<KbRecord> in = {a, b, c, self, a};
  auto deduped = DedupRecords(in);
  EXPECT_EQ(deduped, (std::vector<KbRecord>{a, c, self}));
  EXPECT_EQ(DropSelfRelations(deduped), (std::vector<KbRecord>{a, c}));
}

TEST(Dataset, NegativesSkipAnnotatedAndGluedProteins) {
  NormalizedAbstract na;
  na.pmid = "9";
  na.text = "P1 binds P2 and P3 but not xP4.";
  na.proteins = {"P1", "P2", "P3", "P4"};
  PairSet annotated = {ProteinPair("P2", "P1")};
  auto negs = GenerateNegatives(na, annotated);
  ASSERT_EQ(negs.size(), 2u);
  EXPECT_EQ(negs[0].pair, ProteinPair("P1", "P3"));
  EXPECT_EQ(negs[0].others, (std::vector<std::string>{"P2", "P4"}));
  EXPECT_EQ(negs[1].pair, ProteinPair("P2", "P3"));
}

TEST(Dataset, RatiosAreValidated) {
  SplitRatios r;
  r.fractions = {0.5, 0.5, 0.0};
  EXPECT_THROW(ValidateRatios(r), ValidationError);
  r.fractions = {0.5, 0.3, 0.3};
  EXPECT_THROW(ValidateRatios(r), ValidationError);
  r.fractions = {0.8, 0.1, 0.1};
  EXPECT_NO_THROW(ValidateRatios(r));
}

TEST(Dataset, SplitNeedsThreeDocuments) {
  std::vector<LabeledSample> s(2);
  s[0].pmid = "1";
  s[1].pmid = "2";
  EXPECT_THROW(AssignSplits(s, SplitRatios{}, 0), ValidationError);
}

TEST(Dataset, CorpusTwentyReport) {
  Inputs in = LoadDir("corpus20");
  BuildOptions options;
  options.ratios.fractions = {0.7, 0.1, 0.2};
  options.seed = 13;
  Dataset ds = BuildDataset(in.kb, in.docs, in.mentions, in.map, options);
  EXPECT_EQ(ds.report.positives, 17u);
  EXPECT_EQ(ds.report.negatives, 35u);
  EXPECT_EQ(ds.report.duplicates_removed, 2u);
  EXPECT_EQ(ds.report.self_relations_removed, 1u);
  EXPECT_EQ(ds.report.participant_missing, 1u);
  EXPECT_EQ(ds.report.trigger_missing, 1u);
  EXPECT_EQ(ds.report.unmapped_mentions, 2u);
  std::size_t counted = 0;
  for (const auto &split : ds.report.per_split) {
    for (std::size_t n : split) counted += n;
  }
  EXPECT_EQ(counted, ds.samples.size());
}

TEST(Dataset, ParallelBuildMatchesSerial) {
  synth::CorpusOptions co;
  co.documents = 300;
  co.seed = 5;
  synth::Corpus c = synth::Generate(co);
  BuildOptions serial;
  serial.seed = 3;
  BuildOptions parallel = serial;
  parallel.jobs = 4;
  Dataset a = BuildDataset(c.kb, c.documents, c.mentions, c.map, serial);
  Dataset b = BuildDataset(c.kb, c.documents, c.mentions, c.map, parallel);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.report, b.report);
}

// Split invariants against a direct recount, over several corpora.
TEST(Dataset, SplitsKeepPmidsTogetherAndStayNearTarget) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    synth::CorpusOptions co;
    co.documents = 120;
    co.seed = seed;
    synth::Corpus c = synth::Generate(co);
    BuildOptions options;
    options.seed = seed;
    Dataset ds = BuildDataset(c.kb, c.documents, c.mentions, c.map, options);
    std::map<std::string, Split> seen;
    std::map<std::string, std::size_t> per_doc;
    std::array<double, kNumSplits> sizes{};
    for (const LabeledSample &s : ds.samples) {
      auto [it, inserted] = seen.emplace(s.pmid, s.split);
      EXPECT_EQ(it->second, s.split) << s.pmid;
      ++per_doc[s.pmid];
      sizes[static_cast<std::size_t>(s.split)] += 1;
    }
    std::size_t largest = 0;
    for (const auto &[pmid, n] : per_doc) largest = std::max(largest, n);
    for (std::size_t s = 0; s < kNumSplits; ++s) {
      double target = options.ratios.fractions[s] * ds.samples.size();
      EXPECT_LE(std::fabs(sizes[s] - target), static_cast<double>(largest))
          << "seed " << seed << " split " << s;
    }
  }
}

TEST(Dataset, SplitSeedOnlyReordersTies) {
  synth::CorpusOptions co;
  co.documents = 80;
  synth::Corpus c = synth::Generate(co);
  BuildOptions options;
  Dataset a = BuildDataset(c.kb, c.documents, c.mentions, c.map, options);
  Dataset b = BuildDataset(c.kb, c.documents, c.mentions, c.map, options);
  EXPECT_EQ(a.samples, b.samples);
  options.seed = 99;
  Dataset d = BuildDataset(c.kb, c.documents, c.mentions, c.map, options);
  EXPECT_EQ(a.report.positives, d.report.positives);
  EXPECT_EQ(a.samples.size(), d.samples.size());
}

}  // namespace
}  // namespace ptmx
