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

#ifndef PTMX_SCORING_H_
#define PTMX_SCORING_H_

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptmx/interaction.h"
#include "ptmx/transform.h"

namespace ptmx {

// Probabilities over the seven classes in canonical order.
using ClassDistribution = std::array<double, kNumClasses>;

inline constexpr double kSimplexTolerance = 1e-6;

// Every entry finite and in [0, 1], sum within kSimplexTolerance of 1.
bool IsValidDistribution(const ClassDistribution &probs);

// Scorer wire protocol. A request is {"id","text"}; a response is
// {"id","probs":[7 numbers]} or, when the scorer rejects one input,
// {"id","error":"reason"}. Over a child process both directions are
// newline-delimited JSON; over HTTP the body of POST /score is a JSON array of
// requests and the reply a JSON array of responses.
struct ScoreRequest {
  std::string id;
  std::string text;
};

struct ScoreResponse {
  std::string id;
  std::optional<ClassDistribution> probs;
  std::string error;  // set iff probs is empty
};

std::string EncodeRequest(const ScoreRequest &request);
std::string EncodeResponse(const ScoreResponse &response);
// Throws ProtocolError on malformed JSON or schema violations (including an
// invalid distribution).
ScoreRequest DecodeRequest(std::string_view json);
ScoreResponse DecodeResponse(std::string_view json);

// Re-sequences `responses` into request order. Throws ProtocolError on a
// missing, duplicate or unknown id.
std::vector<ScoreResponse> MatchResponses(std::span<const ScoreRequest> requests,
                                          std::vector<ScoreResponse> responses);

// One ensemble member. Implementations must tolerate concurrent ScoreBatch
// calls.
class Scorer {
 public:
  explicit Scorer(int identity) : identity_(identity) {}
  virtual ~Scorer() = default;

  Scorer(const Scorer &) = delete;
  Scorer &operator=(const Scorer &) = delete;

  // 1-based model index within the ensemble.
  int identity() const { return identity_; }

  // One response per request, in request order. Throws ProtocolError on
  // transport or protocol failure.
  virtual std::vector<ScoreResponse> ScoreBatch(std::span<const ScoreRequest> batch) = 0;

 private:
  int identity_;
};

struct StubOptions {
  double perturbation = 0.05;  // max absolute change per nonzero class weight
  double baseline = 0.5;       // negative-class weight
  std::uint64_t seed = 0;
  StemTable stems = StemTable::Default();
};

// Occurrences of the class's stems in `text`, not counting a match that is
// part of a longer stem of another class ("phosphoryl" inside
// "dephosphoryl").
std::size_t CountTriggerStems(std::string_view text, InteractionType cls,
                              const StemTable &stems);

// Deterministic lexical stand-in for a trained model.
ClassDistribution ScoreStub(std::string_view sample_id, std::string_view text,
                            int model_index, const StubOptions &options);

class StubScorer : public Scorer {
 public:
  StubScorer(int identity, StubOptions options);
  std::vector<ScoreResponse> ScoreBatch(std::span<const ScoreRequest> batch) override;

 private:
  StubOptions options_;
};

struct ExternalOptions {
  std::chrono::milliseconds timeout{60000};
};

// Talks to a long-lived child process (`/bin/sh -c command`) over its
// stdin/stdout. The child is restarted after a failure.
class CommandScorer : public Scorer {
 public:
  CommandScorer(int identity, std::string command, ExternalOptions options);
  ~CommandScorer() override;
  std::vector<ScoreResponse> ScoreBatch(std::span<const ScoreRequest> batch) override;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// POSTs batches to <base_url>/score.
class HttpScorer : public Scorer {
 public:
  HttpScorer(int identity, std::string base_url, ExternalOptions options);
  ~HttpScorer() override;
  std::vector<ScoreResponse> ScoreBatch(std::span<const ScoreRequest> batch) override;

 private:
  std::string base_url_;
  ExternalOptions options_;
};

enum class ScorerKind { kStubLexical, kExternalCommand, kExternalHttp };

struct ScorerHandle {
  ScorerKind kind = ScorerKind::kStubLexical;
  int identity = 1;
  std::string config;  // command line or base URL; empty for stubs
};

// Parses "stub", "cmd:<command>" or "url:<base url>". Any "{i}" in the config
// is replaced by the model identity.
ScorerHandle ParseScorerSpec(std::string_view spec, int identity);
std::string ScorerSpecString(const ScorerHandle &handle);

std::unique_ptr<Scorer> MakeScorer(const ScorerHandle &handle,
                                   const StubOptions &stub,
                                   const ExternalOptions &external);

struct EnsembleFailure {
  int model = 0;
  std::string message;
};

// Output of all M members for one input. Exactly one of per_model (size M)
// and failure is populated.
struct RawEnsembleOutput {
  std::string id;
  std::string pmid;
  ProteinPair pair;
  std::vector<ClassDistribution> per_model;
  std::optional<EnsembleFailure> failure;
};

struct EnsembleOptions {
  std::size_t batch_size = 64;
  int retries = 2;
  std::chrono::milliseconds backoff{200};  // doubled after each retry
  unsigned jobs = 1;
};

// Scores every input with every scorer. Output order is input order and model
// order is scorer order, independent of `jobs`. Inputs rejected by any scorer
// carry a failure marker. Throws ScorerError when a batch keeps failing.
std::vector<RawEnsembleOutput> RunEnsemble(std::span<const TransformedInput> inputs,
                                           std::span<Scorer *const> scorers,
                                           const EnsembleOptions &options);

}  // namespace ptmx

#endif  // PTMX_SCORING_H_
