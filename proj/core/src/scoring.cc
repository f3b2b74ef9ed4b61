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

#include "ptmx/scoring.h"

#include <cmath>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "ptmx/errors.h"
#include "ptmx/hashing.h"
#include "ptmx/parallel.h"
#include "ptmx/text.h"

namespace ptmx {
namespace {

using ordered_json = nlohmann::ordered_json;

nlohmann::json ParseJson(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ProtocolError(std::string("malformed JSON from scorer: ") + e.what());
  }
}

std::string RequireId(const nlohmann::json &obj) {
  if (!obj.is_object()) throw ProtocolError("expected a JSON object");
  auto id = obj.find("id");
  if (id == obj.end() || !id->is_string()) throw ProtocolError("missing string \"id\"");
  return id->get<std::string>();
}

// Uniform value in [-1, 1] keyed by (sample, model, class, seed).
double Jitter(std::string_view sample_id, int model_index, std::size_t cls,
              std::uint64_t seed) {
  std::uint64_t h = Fnv1a64(sample_id);
  h = Mix64(h ^ Mix64(seed));
  h = Mix64(h ^ static_cast<std::uint64_t>(model_index));
  h = Mix64(h ^ (static_cast<std::uint64_t>(cls) << 32));
  double unit = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * unit - 1.0;
}

}  // namespace

bool IsValidDistribution(const ClassDistribution &probs) {
  double sum = 0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) return false;
    sum += p;
  }
  return std::fabs(sum - 1.0) <= kSimplexTolerance;
}

std::string EncodeRequest(const ScoreRequest &request) {
  ordered_json obj;
  obj["id"] = request.id;
  obj["text"] = request.text;
  return obj.dump();
}

std::string EncodeResponse(const ScoreResponse &response) {
  ordered_json obj;
  obj["id"] = response.id;
  if (response.probs) {
    obj["probs"] = *response.probs;
  } else {
    obj["error"] = response.error;
  }
  return obj.dump();
}

ScoreRequest DecodeRequest(std::string_view json) {
  nlohmann::json obj = ParseJson(json);
  ScoreRequest req;
  req.id = RequireId(obj);
  auto text = obj.find("text");
  if (text == obj.end() || !text->is_string()) throw ProtocolError("missing string \"text\"");
  req.text = text->get<std::string>();
  return req;
}

ScoreResponse DecodeResponse(std::string_view json) {
  nlohmann::json obj = ParseJson(json);
  ScoreResponse resp;
  resp.id = RequireId(obj);
  auto probs = obj.find("probs");
  auto error = obj.find("error");
  if ((probs == obj.end()) == (error == obj.end())) {
    throw ProtocolError("response " + resp.id + " must carry exactly one of probs/error");
  }
  if (error != obj.end()) {
    if (!error->is_string()) throw ProtocolError("response " + resp.id + ": error must be a string");
    resp.error = error->get<std::string>();
    if (resp.error.empty()) resp.error = "rejected";
    return resp;
  }
  if (!probs->is_array() || probs->size() != kNumClasses) {
    throw ProtocolError("response " + resp.id + ": probs must hold 7 numbers");
  }
  ClassDistribution dist{};
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    if (!(*probs)[i].is_number()) {
      throw ProtocolError("response " + resp.id + ": probs must hold 7 numbers");
    }
    dist[i] = (*probs)[i].get<double>();
  }
  if (!IsValidDistribution(dist)) {
    double sum = 0;
    for (double p : dist) sum += p;
    throw ProtocolError("response " + resp.id + ": invalid distribution (sum " +
                        FormatDouble(sum) + ")");
  }
  resp.probs = dist;
  return resp;
}

std::vector<ScoreResponse> MatchResponses(std::span<const ScoreRequest> requests,
                                          std::vector<ScoreResponse> responses) {
  std::unordered_map<std::string_view, std::size_t> slot;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!slot.emplace(requests[i].id, i).second) {
      throw ProtocolError("duplicate request id " + requests[i].id);
    }
  }
  std::vector<std::optional<ScoreResponse>> ordered(requests.size());
  for (ScoreResponse &r : responses) {
    auto it = slot.find(r.id);
    if (it == slot.end()) throw ProtocolError("response for unknown id " + r.id);
    if (ordered[it->second]) throw ProtocolError("duplicate response for id " + r.id);
    ordered[it->second] = std::move(r);
  }
  std::vector<ScoreResponse> out;
  out.reserve(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!ordered[i]) throw ProtocolError("no response for id " + requests[i].id);
    out.push_back(std::move(*ordered[i]));
  }
  return out;
}

std::size_t CountTriggerStems(std::string_view text, InteractionType cls,
                              const StemTable &stems) {
  std::size_t count = 0;
  for (const std::string &stem : stems.stems(cls)) {
    for (std::size_t pos = FindIgnoreCase(text, stem); pos != std::string_view::npos;
         pos = FindIgnoreCase(text, stem, pos + 1)) {
      bool shadowed = false;
      for (InteractionType other : kPositiveClasses) {
        if (other == cls) continue;
        for (const std::string &longer : stems.stems(other)) {
          if (longer.size() <= stem.size()) continue;
          std::size_t k = longer.find(stem);
          if (k == std::string::npos || k > pos) continue;
          std::size_t at = pos - k;
          if (at + longer.size() <= text.size() &&
              AsciiLower(text.substr(at, longer.size())) == longer) {
            shadowed = true;
          }
        }
      }
      if (!shadowed) ++count;
    }
  }
  return count;
}

ClassDistribution ScoreStub(std::string_view sample_id, std::string_view text,
                            int model_index, const StubOptions &options) {
  if (model_index < 1) throw ValidationError("model index must be >= 1");
  ClassDistribution weights{};
  weights[0] = options.baseline;
  for (InteractionType t : kPositiveClasses) {
    weights[ClassIndex(t)] = static_cast<double>(CountTriggerStems(text, t, options.stems));
  }
  double total = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (weights[c] > 0 && options.perturbation > 0) {
      weights[c] += options.perturbation * Jitter(sample_id, model_index, c, options.seed);
      if (weights[c] < 0) weights[c] = 0;
    }
    total += weights[c];
  }
  if (total <= 0) {
    ClassDistribution neg{};
    neg[0] = 1.0;
    return neg;
  }
  for (double &w : weights) w /= total;
  return weights;
}

StubScorer::StubScorer(int identity, StubOptions options)
    : Scorer(identity), options_(std::move(options)) {}

std::vector<ScoreResponse> StubScorer::ScoreBatch(std::span<const ScoreRequest> batch) {
  std::vector<ScoreResponse> out;
  out.reserve(batch.size());
  for (const ScoreRequest &req : batch) {
    out.push_back({req.id, ScoreStub(req.id, req.text, identity(), options_), {}});
  }
  return out;
}

ScorerHandle ParseScorerSpec(std::string_view spec, int identity) {
  ScorerHandle h;
  h.identity = identity;
  auto substitute = [&](std::string_view config) {
    std::string out(config);
    const std::string idx = std::to_string(identity);
    for (std::size_t pos = out.find("{i}"); pos != std::string::npos;
         pos = out.find("{i}", pos + idx.size())) {
      out.replace(pos, 3, idx);
    }
    return out;
  };
  if (spec == "stub") {
    h.kind = ScorerKind::kStubLexical;
  } else if (spec.rfind("cmd:", 0) == 0 && spec.size() > 4) {
    h.kind = ScorerKind::kExternalCommand;
    h.config = substitute(spec.substr(4));
  } else if (spec.rfind("url:", 0) == 0 && spec.size() > 4) {
    h.kind = ScorerKind::kExternalHttp;
    h.config = substitute(spec.substr(4));
  } else {
    throw ValidationError("unknown scorer spec '" + std::string(spec) +
                          "'; expected stub, cmd:<command> or url:<base url>");
  }
  return h;
}

std::string ScorerSpecString(const ScorerHandle &handle) {
  switch (handle.kind) {
    case ScorerKind::kStubLexical:
      return "stub";
    case ScorerKind::kExternalCommand:
      return "cmd:" + handle.config;
    case ScorerKind::kExternalHttp:
      return "url:" + handle.config;
  }
  return "";
}

std::unique_ptr<Scorer> MakeScorer(const ScorerHandle &handle,
                                   const StubOptions &stub,
                                   const ExternalOptions &external) {
  if (handle.identity < 1) throw ValidationError("scorer identity must be >= 1");
  switch (handle.kind) {
    case ScorerKind::kStubLexical:
      return std::make_unique<StubScorer>(handle.identity, stub);
    case ScorerKind::kExternalCommand:
      return std::make_unique<CommandScorer>(handle.identity, handle.config, external);
    case ScorerKind::kExternalHttp:
      return std::make_unique<HttpScorer>(handle.identity, handle.config, external);
  }
  throw ValidationError("unknown scorer kind");
}

std::vector<RawEnsembleOutput> RunEnsemble(std::span<const TransformedInput> inputs,
                                           std::span<Scorer *const> scorers,
                                           const EnsembleOptions &options) {
  if (scorers.empty()) throw ValidationError("ensemble needs at least one scorer");
  if (options.batch_size == 0) throw ValidationError("batch size must be >= 1");

  std::vector<RawEnsembleOutput> out(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    out[i].id = inputs[i].id;
    out[i].pmid = inputs[i].pmid;
    out[i].pair = inputs[i].pair;
    out[i].per_model.reserve(scorers.size());
  }

  const std::size_t batches = (inputs.size() + options.batch_size - 1) / options.batch_size;
  ParallelFor(batches, options.jobs, [&](std::size_t b) {
    const std::size_t begin = b * options.batch_size;
    const std::size_t end = std::min(inputs.size(), begin + options.batch_size);
    std::vector<ScoreRequest> requests;
    requests.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) requests.push_back({inputs[i].id, inputs[i].text});

    for (Scorer *scorer : scorers) {
      std::vector<ScoreResponse> responses;
      for (int attempt = 0;; ++attempt) {
        try {
          responses = scorer->ScoreBatch(requests);
          if (responses.size() != requests.size()) {
            throw ProtocolError("scorer returned " + std::to_string(responses.size()) +
                                " responses for " + std::to_string(requests.size()) +
                                " requests");
          }
          break;
        } catch (const ProtocolError &e) {
          if (attempt >= options.retries) throw ScorerError(scorer->identity(), b, e.what());
          std::this_thread::sleep_for(options.backoff * (1 << attempt));
        }
      }
      for (std::size_t k = 0; k < responses.size(); ++k) {
        RawEnsembleOutput &o = out[begin + k];
        if (o.failure) continue;
        if (!responses[k].probs) {
          o.failure = EnsembleFailure{scorer->identity(), responses[k].error};
          o.per_model.clear();
          continue;
        }
        o.per_model.push_back(*responses[k].probs);
      }
    }
  });
  return out;
}

}  // namespace ptmx
