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

#include <httplib.h>

#include <atomic>
#include <thread>

#include <nlohmann/json.hpp>

#include "ptmx/errors.h"
#include "ptmx/scoring.h"
#include "test_support.h"

namespace ptmx {
namespace {

std::vector<TransformedInput> Inputs(const std::vector<std::string> &texts) {
  std::vector<TransformedInput> out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    TransformedInput t;
    t.pmid = std::to_string(100 + i);
    t.pair = ProteinPair("A" + std::to_string(i), "B" + std::to_string(i));
    t.id = SampleId(t.pmid, t.pair);
    t.text = texts[i];
    out.push_back(std::move(t));
  }
  return out;
}

std::string Fake(const std::string &mode) { return test::FakeScorerPath() + " " + mode; }

EnsembleOptions Fast() {
  EnsembleOptions o;
  o.backoff = std::chrono::milliseconds(1);
  return o;
}

TEST(ScoringCodec, RoundTrip) {
  ScoreRequest req{"1:A:B", "text with \"quotes\" and \xce\xb1"};
  ScoreRequest back = DecodeRequest(EncodeRequest(req));
  EXPECT_EQ(back.id, req.id);
  EXPECT_EQ(back.text, req.text);

  ScoreResponse resp{"1:A:B", ClassDistribution{0.25, 0, 0, 0, 0, 0.75, 0}, ""};
  ScoreResponse r2 = DecodeResponse(EncodeResponse(resp));
  EXPECT_EQ(r2.probs, resp.probs);

  ScoreResponse err = DecodeResponse(R"({"id":"x","error":"too long"})");
  EXPECT_FALSE(err.probs);
  EXPECT_EQ(err.error, "too long");
}

TEST(ScoringCodec, RejectsBadResponses) {
  EXPECT_THROW(DecodeResponse("{"), ProtocolError);
  EXPECT_THROW(DecodeResponse(R"({"id":"x"})"), ProtocolError);
  EXPECT_THROW(DecodeResponse(R"({"id":"x","probs":[1,0,0,0,0,0,0],"error":"e"})"),
               ProtocolError);
  EXPECT_THROW(DecodeResponse(R"({"id":"x","probs":[1,0,0]})"), ProtocolError);
  EXPECT_THROW(DecodeResponse(R"({"id":"x","probs":[0.8,0,0,0,0,0,0]})"), ProtocolError);
  EXPECT_THROW(DecodeResponse(R"({"id":"x","probs":[1.5,-0.5,0,0,0,0,0]})"), ProtocolError);
  EXPECT_THROW(DecodeRequest(R"({"id":"x"})"), ProtocolError);
}

TEST(ScoringCodec, SimplexTolerance) {
  ClassDistribution d{0.5, 0.5 + 5e-7, 0, 0, 0, 0, 0};
  EXPECT_TRUE(IsValidDistribution(d));
  d[1] = 0.5 + 5e-6;
  EXPECT_FALSE(IsValidDistribution(d));
}

TEST(ScoringMatch, ReordersAndDetectsMismatch) {
  std::vector<ScoreRequest> reqs = {{"a", ""}, {"b", ""}};
  ClassDistribution neg{1, 0, 0, 0, 0, 0, 0};
  auto out = MatchResponses(reqs, {{"b", neg, ""}, {"a", neg, ""}});
  EXPECT_EQ(out[0].id, "a");
  EXPECT_EQ(out[1].id, "b");
  EXPECT_THROW(MatchResponses(reqs, {{"a", neg, ""}}), ProtocolError);
  EXPECT_THROW(MatchResponses(reqs, {{"a", neg, ""}, {"a", neg, ""}}), ProtocolError);
  EXPECT_THROW(MatchResponses(reqs, {{"a", neg, ""}, {"c", neg, ""}}), ProtocolError);
}

TEST(ScoringStub, TriggerCountsIgnoreLongerStems) {
  StemTable stems = StemTable::Default();
  std::string text = "Dephosphorylation of X, then phosphorylation and Phosphorylated Y.";
  EXPECT_EQ(CountTriggerStems(text, InteractionType::kPhosphorylation, stems), 2u);
  EXPECT_EQ(CountTriggerStems(text, InteractionType::kDephosphorylation, stems), 1u);
  EXPECT_EQ(CountTriggerStems("deubiquitinates", InteractionType::kUbiquitination, stems), 0u);
}

TEST(ScoringStub, DeterministicAndValid) {
  StubOptions o;
  auto a = ScoreStub("1:A:B", "PROTPART1 phosphorylates PROTPART2", 3, o);
  auto b = ScoreStub("1:A:B", "PROTPART1 phosphorylates PROTPART2", 3, o);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(IsValidDistribution(a));
  EXPECT_GT(a[ClassIndex(InteractionType::kPhosphorylation)], 0.5);
  auto c = ScoreStub("1:A:B", "PROTPART1 phosphorylates PROTPART2", 4, o);
  EXPECT_NE(a, c);
  auto neg = ScoreStub("1:A:B", "PROTPART1 binds PROTPART2", 1, o);
  EXPECT_EQ(neg[0], 1.0);
  o.perturbation = 0;
  EXPECT_EQ(ScoreStub("x", "acetylation", 1, o), ScoreStub("x", "acetylation", 2, o));
  EXPECT_THROW(ScoreStub("x", "y", 0, o), ValidationError);
}

TEST(ScoringSpec, ParseAndFormat) {
  auto h = ParseScorerSpec("cmd:python serve.py --model m{i}.bin --tag {i}", 4);
  EXPECT_EQ(h.kind, ScorerKind::kExternalCommand);
  EXPECT_EQ(h.config, "python serve.py --model m4.bin --tag 4");
  EXPECT_EQ(ScorerSpecString(h), "cmd:python serve.py --model m4.bin --tag 4");
  EXPECT_EQ(ParseScorerSpec("url:http://h:80{i}", 2).config, "http://h:802");
  EXPECT_EQ(ParseScorerSpec("stub", 1).kind, ScorerKind::kStubLexical);
  EXPECT_THROW(ParseScorerSpec("cmd:", 1), ValidationError);
  EXPECT_THROW(ParseScorerSpec("bert", 1), ValidationError);
}

TEST(ScoringEnsemble, OrderIndependentOfJobsAndBatches) {
  std::vector<std::string> texts;
  for (int i = 0; i < 50; ++i) texts.push_back(i % 3 ? "PROTPART1 acetylates PROTPART2" : "none");
  auto inputs = Inputs(texts);
  StubOptions o;
  std::vector<std::unique_ptr<Scorer>> owned;
  std::vector<Scorer *> scorers;
  for (int m = 1; m <= 3; ++m) {
    owned.push_back(std::make_unique<StubScorer>(m, o));
    scorers.push_back(owned.back().get());
  }
  EnsembleOptions one = Fast();
  one.batch_size = 50;
  EnsembleOptions many = Fast();
  many.batch_size = 7;
  many.jobs = 4;
  auto a = RunEnsemble(inputs, scorers, one);
  auto b = RunEnsemble(inputs, scorers, many);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, inputs[i].id);
    ASSERT_EQ(a[i].per_model.size(), 3u);
    EXPECT_EQ(a[i].per_model, b[i].per_model);
    EXPECT_EQ(a[i].per_model[1], ScoreStub(inputs[i].id, texts[i], 2, o));
  }
}

TEST(ScoringCommand, HappyPathAndReordering) {
  auto inputs = Inputs({"phosphorylation here", "nothing", "phosphoryl", "x"});
  CommandScorer ok(1, Fake("ok 2"), {});
  CommandScorer reorder(2, Fake("reorder"), {});
  std::vector<Scorer *> scorers = {&ok, &reorder};
  EnsembleOptions o = Fast();
  o.batch_size = 2;
  auto out = RunEnsemble(inputs, scorers, o);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_NEAR(out[0].per_model[0][ClassIndex(InteractionType::kPhosphorylation)], 0.74, 1e-12);
  EXPECT_NEAR(out[0].per_model[1][ClassIndex(InteractionType::kPhosphorylation)], 0.72, 1e-12);
  EXPECT_EQ(out[1].per_model[1][0], 1.0);
  // The same child serves later batches.
  auto again = RunEnsemble(inputs, scorers, o);
  EXPECT_EQ(again[2].per_model, out[2].per_model);
}

TEST(ScoringCommand, InvalidOutputBecomesScorerError) {
  auto inputs = Inputs({"a"});
  for (const char *mode : {"badsum", "missing"}) {
    CommandScorer s(3, Fake(mode), {});
    std::vector<Scorer *> scorers = {&s};
    EnsembleOptions o = Fast();
    o.retries = 1;
    try {
      RunEnsemble(inputs, scorers, o);
      FAIL() << mode;
    } catch (const ScorerError &e) {
      EXPECT_EQ(e.model(), 3);
      EXPECT_EQ(e.batch(), 0u);
    }
  }
}

TEST(ScoringCommand, PoisonInputIsMarkedNotFatal) {
  auto inputs = Inputs({"phosphorylation", "POISON pill", "fine"});
  CommandScorer ok(1, Fake("ok"), {});
  CommandScorer reject(2, Fake("reject"), {});
  std::vector<Scorer *> scorers = {&ok, &reject};
  auto out = RunEnsemble(inputs, scorers, Fast());
  EXPECT_FALSE(out[0].failure);
  EXPECT_EQ(out[0].per_model.size(), 2u);
  ASSERT_TRUE(out[1].failure);
  EXPECT_EQ(out[1].failure->model, 2);
  EXPECT_EQ(out[1].failure->message, "input rejected");
  EXPECT_TRUE(out[1].per_model.empty());
  EXPECT_FALSE(out[2].failure);
}

TEST(ScoringCommand, CrashedChildIsRestarted) {
  test::TempDir dir;
  auto inputs = Inputs({"phosphorylation"});
  CommandScorer s(1, Fake("crash-once " + (dir / "flag").string()), {});
  std::vector<Scorer *> scorers = {&s};
  auto out = RunEnsemble(inputs, scorers, Fast());
  ASSERT_EQ(out[0].per_model.size(), 1u);
  EXPECT_TRUE(std::filesystem::exists(dir / "flag"));
}

TEST(ScoringCommand, TimeoutIsRetriedThenFatal) {
  auto inputs = Inputs({"a"});
  ExternalOptions ext;
  ext.timeout = std::chrono::milliseconds(200);
  CommandScorer s(1, Fake("slow"), ext);
  std::vector<Scorer *> scorers = {&s};
  EnsembleOptions o = Fast();
  o.retries = 1;
  auto start = std::chrono::steady_clock::now();
  EXPECT_THROW(RunEnsemble(inputs, scorers, o), ScorerError);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(5));
}

TEST(ScoringCommand, MissingExecutableFails) {
  auto inputs = Inputs({"a"});
  CommandScorer s(1, "/nonexistent/scorer-binary", {});
  std::vector<Scorer *> scorers = {&s};
  EnsembleOptions o = Fast();
  o.retries = 0;
  EXPECT_THROW(RunEnsemble(inputs, scorers, o), ScorerError);
}

class FakeHttpScorer {
 public:
  explicit FakeHttpScorer(bool reversed) {
    server_.Post("/v1/score", [this, reversed](const httplib::Request &req,
                                               httplib::Response &res) {
      ++calls_;
      if (calls_ == 1) {
        res.status = 503;
        return;
      }
      auto arr = nlohmann::json::parse(req.body);
      nlohmann::json out = nlohmann::json::array();
      for (const auto &r : arr) {
        std::string text = r.at("text");
        if (text == "poison") {
          out.push_back({{"id", r.at("id")}, {"error", "bad input"}});
        } else {
          out.push_back({{"id", r.at("id")}, {"probs", {0.1, 0.9, 0, 0, 0, 0, 0}}});
        }
      }
      if (reversed) std::reverse(out.begin(), out.end());
      res.set_content(out.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeHttpScorer() {
    server_.stop();
    thread_.join();
  }
  std::string base() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
  int calls() const { return calls_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> calls_{0};
};

TEST(ScoringHttp, RetriesThenMatchesIds) {
  FakeHttpScorer fake(true);
  auto inputs = Inputs({"a", "poison", "c"});
  HttpScorer s(1, fake.base(), {});
  std::vector<Scorer *> scorers = {&s};
  auto out = RunEnsemble(inputs, scorers, Fast());
  EXPECT_EQ(fake.calls(), 2);
  EXPECT_EQ(out[0].per_model[0][1], 0.9);
  ASSERT_TRUE(out[1].failure);
  EXPECT_EQ(out[1].failure->message, "bad input");
  EXPECT_EQ(out[2].per_model.size(), 1u);
}

TEST(ScoringHttp, UnreachableServerFails) {
  HttpScorer s(1, "http://127.0.0.1:1", {});
  std::vector<ScoreRequest> reqs = {{"a", "b"}};
  EXPECT_THROW(s.ScoreBatch(reqs), ProtocolError);
}

}  // namespace
}  // namespace ptmx
