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

#include "ptmx/transform.h"

#include <map>

#include "ptmx/errors.h"
#include "ptmx/text.h"

namespace ptmx {

std::string SampleId(const std::string &pmid, const ProteinPair &pair) {
  return pmid + ":" + pair.low() + ":" + pair.high();
}

TransformedInput MaskParticipants(const std::string &pmid, std::string_view text,
                                  const std::set<std::string> &proteins,
                                  const ProteinPair &pair) {
  TransformedInput out;
  out.id = SampleId(pmid, pair);
  out.pmid = pmid;
  out.pair = pair;
  out.text.reserve(text.size());

  bool seen_low = false, seen_high = false;
  std::map<std::string_view, std::size_t> other_index;
  std::size_t cursor = 0;
  for (const Token &tok : WordTokens(text)) {
    std::string_view word = text.substr(tok.begin, tok.end - tok.begin);
    std::string replacement;
    if (word == pair.low()) {
      replacement = kParticipantMarker1;
      seen_low = true;
    } else if (word == pair.high()) {
      replacement = kParticipantMarker2;
      seen_high = true;
    } else if (proteins.count(std::string(word))) {
      auto [it, inserted] = other_index.emplace(word, other_index.size() + 1);
      replacement = std::string(kOtherMarkerPrefix) + std::to_string(it->second);
    } else {
      continue;
    }
    out.text.append(text.substr(cursor, tok.begin - cursor));
    out.text += replacement;
    cursor = tok.end;
  }
  out.text.append(text.substr(cursor));

  if (!seen_low || !seen_high) {
    throw ValidationError("pmid " + pmid + ": participant " +
                          (seen_low ? pair.high() : pair.low()) +
                          " does not occur in the text");
  }
  return out;
}

TransformedInput MaskParticipants(const NormalizedAbstract &na,
                                  const ProteinPair &pair) {
  return MaskParticipants(na.pmid, na.text, na.proteins, pair);
}

TransformedInput MaskSample(const LabeledSample &sample) {
  std::set<std::string> proteins(sample.others.begin(), sample.others.end());
  proteins.insert(sample.pair.low());
  proteins.insert(sample.pair.high());
  return MaskParticipants(sample.pmid, sample.text, proteins, sample.pair);
}

std::size_t WhitespaceTokenCount(std::string_view text) {
  return SplitWhitespace(text).size();
}

std::string Truncate(std::string_view text, std::size_t budget,
                     const LengthFn &length_fn) {
  if (budget == 0) throw ValidationError("truncation budget must be at least 1");
  if (length_fn(text) <= budget) return std::string(text);

  // Candidate cut points: the end of each whitespace-delimited word.
  std::vector<std::size_t> cuts;
  for (std::string_view word : SplitWhitespace(text)) {
    cuts.push_back(static_cast<std::size_t>(word.data() - text.data()) + word.size());
  }
  // Largest cut whose prefix fits.
  std::size_t lo = 0, hi = cuts.size();  // answer in [0, hi)
  std::size_t best = 0;
  bool found = false;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (length_fn(text.substr(0, cuts[mid])) <= budget) {
      best = mid;
      found = true;
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return found ? std::string(text.substr(0, cuts[best])) : std::string();
}

std::vector<ProteinPair> EnumeratePairs(const std::set<std::string> &proteins) {
  std::vector<ProteinPair> out;
  if (proteins.size() >= 2) out.reserve(proteins.size() * (proteins.size() - 1) / 2);
  for (auto i = proteins.begin(); i != proteins.end(); ++i) {
    for (auto j = std::next(i); j != proteins.end(); ++j) out.emplace_back(*i, *j);
  }
  return out;
}

std::vector<ProteinPair> EnumeratePairs(const NormalizedAbstract &na) {
  return EnumeratePairs(na.proteins);
}

}  // namespace ptmx
