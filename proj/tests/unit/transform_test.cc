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

#include "oracles.h"
#include "ptmx/dataset.h"
#include "ptmx/errors.h"
#include "ptmx/transform.h"

namespace ptmx {
namespace {

TEST(Transform, MasksPairAndNumbersOthers) {
  std::set<std::string> proteins = {"P04150", "P31749", "P60484", "Q9"};
  auto t = MaskParticipants("7", "Q9 and P31749 phosphorylate P04150; P60484, Q9 and P31749.",
                            proteins, ProteinPair("P31749", "P04150"));
  EXPECT_EQ(t.id, "7:P04150:P31749");
  EXPECT_EQ(t.text, "PRTIG1 and PROTPART2 phosphorylate PROTPART1; PRTIG2, PRTIG1 and PROTPART2.");
}

TEST(Transform, LeavesGluedAccessionsAlone) {
  std::set<std::string> proteins = {"P1", "P2"};
  auto t = MaskParticipants("7", "P1-P2 vs P1x and P2", proteins, ProteinPair("P1", "P2"));
  EXPECT_EQ(t.text, "PROTPART1-PROTPART2 vs P1x and PROTPART2");
}

TEST(Transform, MissingParticipantThrows) {
  std::set<std::string> proteins = {"P1", "P2"};
  EXPECT_THROW(MaskParticipants("7", "only P1 here", proteins, ProteinPair("P1", "P2")),
               ValidationError);
}

TEST(Transform, MaskSampleUsesOthers) {
  LabeledSample s;
  s.pmid = "3";
  s.pair = ProteinPair("A1", "B1");
  s.others = {"C1"};
  s.text = "C1 A1 B1";
  EXPECT_EQ(MaskSample(s).text, "PRTIG1 PROTPART1 PROTPART2");
}

TEST(Transform, TruncateAtTokenBoundary) {
  EXPECT_EQ(Truncate("a b  c d", 10), "a b  c d");
  EXPECT_EQ(Truncate("a b  c d", 3), "a b  c");
  EXPECT_EQ(Truncate("  a b", 1), "  a");
  EXPECT_THROW(Truncate("a", 0), ValidationError);
  // A character-count budget with a custom length function.
  auto chars = [](std::string_view s) { return s.size(); };
  EXPECT_EQ(Truncate("alpha beta gamma", 12, chars), "alpha beta");
  EXPECT_EQ(Truncate("alphabet", 3, chars), "");
}

TEST(Transform, TruncatedNeverExceedsBudget) {
  std::string text;
  for (int i = 0; i < 700; ++i) text += "w" + std::to_string(i) + (i % 7 ? " " : "\n\t");
  for (std::size_t budget : {1, 2, 50, 509, 510, 699, 700, 800}) {
    std::string cut = Truncate(text, budget);
    EXPECT_EQ(WhitespaceTokenCount(cut), std::min<std::size_t>(budget, 700));
    EXPECT_EQ(text.compare(0, cut.size(), cut), 0);
  }
}

TEST(Transform, EnumeratePairsMatchesOracle) {
  for (std::size_t n = 0; n <= 50; ++n) {
    std::set<std::string> proteins;
    std::vector<std::string> items;
    for (std::size_t i = 0; i < n; ++i) {
      proteins.insert("P" + std::to_string(i * 7919 % 1000));
      items.push_back("P" + std::to_string(i * 7919 % 1000));
    }
    auto pairs = EnumeratePairs(proteins);
    ASSERT_EQ(pairs.size(), n * (n - 1) / 2);
    std::set<std::pair<std::string, std::string>> got;
    for (const ProteinPair &p : pairs) got.emplace(p.low(), p.high());
    EXPECT_EQ(got, oracle::AllPairs(items));
    EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end()));
  }
}

}  // namespace
}  // namespace ptmx
