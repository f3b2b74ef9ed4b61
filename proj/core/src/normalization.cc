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

#include "ptmx/normalization.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "ptmx/errors.h"
#include "ptmx/utf8.h"

namespace ptmx {

std::string MapMention(const std::string &ncbi_id, const GeneProteinMap &map,
                       std::span<const std::string> preferred) {
  const std::vector<std::string> *accessions = map.Find(ncbi_id);
  if (accessions == nullptr) throw UnmappedGeneError(ncbi_id);
  for (const std::string &acc : *accessions) {
    if (std::find(preferred.begin(), preferred.end(), acc) != preferred.end()) {
      return acc;
    }
  }
  return accessions->front();
}

std::string MapMention(const std::string &ncbi_id, const GeneProteinMap &map,
                       const std::optional<ProteinPair> &kb_pair) {
  if (!kb_pair) return MapMention(ncbi_id, map, std::span<const std::string>());
  const std::string pair[2] = {kb_pair->low(), kb_pair->high()};
  return MapMention(ncbi_id, map, std::span<const std::string>(pair, 2));
}

NormalizedAbstract NormalizeDocument(const Document &doc,
                                     std::span<const GeneMention> mentions,
                                     const GeneProteinMap &map,
                                     std::span<const std::string> preferred) {
  const std::vector<std::size_t> offsets = utf8::ScalarOffsets(doc.text);
  const std::size_t length = offsets.size() - 1;

  std::vector<std::size_t> order(mentions.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mentions[a].start < mentions[b].start;
  });

  for (std::size_t k = 0; k < order.size(); ++k) {
    const GeneMention &m = mentions[order[k]];
    if (m.pmid != doc.pmid) {
      throw ValidationError("mention for pmid " + m.pmid +
                            " passed with document " + doc.pmid);
    }
    if (m.start >= m.end || m.end > length) {
      throw ValidationError("pmid " + doc.pmid + ": span [" +
                            std::to_string(m.start) + "," +
                            std::to_string(m.end) + ") out of bounds for text of " +
                            std::to_string(length) + " characters");
    }
    if (k > 0 && m.start < mentions[order[k - 1]].end) {
      throw ValidationError("pmid " + doc.pmid + ": overlapping mention spans at " +
                            std::to_string(m.start));
    }
    std::string_view slice(doc.text.data() + offsets[m.start],
                           offsets[m.end] - offsets[m.start]);
    if (slice != m.surface) {
      throw ValidationError("pmid " + doc.pmid + ": surface '" + m.surface +
                            "' does not match text '" + std::string(slice) +
                            "' at " + std::to_string(m.start));
    }
  }

  NormalizedAbstract out;
  out.pmid = doc.pmid;
  std::map<std::string, std::optional<std::string>> chosen;
  std::size_t cursor = 0;  // byte offset into doc.text
  for (std::size_t idx : order) {
    const GeneMention &m = mentions[idx];
    auto it = chosen.find(m.ncbi_id);
    if (it == chosen.end()) {
      std::optional<std::string> acc;
      if (map.Find(m.ncbi_id) != nullptr) acc = MapMention(m.ncbi_id, map, preferred);
      it = chosen.emplace(m.ncbi_id, std::move(acc)).first;
    }
    if (!it->second) {
      ++out.skipped;
      continue;
    }
    out.text.append(doc.text, cursor, offsets[m.start] - cursor);
    out.text += *it->second;
    cursor = offsets[m.end];
    out.proteins.insert(*it->second);
    out.mention_map.push_back({m.start, m.end, *it->second});
  }
  out.text.append(doc.text, cursor, std::string::npos);
  return out;
}

NormalizedAbstract NormalizeDocument(const Document &doc,
                                     std::span<const GeneMention> mentions,
                                     const GeneProteinMap &map,
                                     const std::optional<ProteinPair> &kb_pair) {
  if (!kb_pair) return NormalizeDocument(doc, mentions, map, std::span<const std::string>());
  const std::string pair[2] = {kb_pair->low(), kb_pair->high()};
  return NormalizeDocument(doc, mentions, map, std::span<const std::string>(pair, 2));
}

}  // namespace ptmx
