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

#include "ptmx/corpus_io.h"

#include <charconv>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "ptmx/errors.h"
#include "ptmx/text.h"
#include "ptmx/utf8.h"

namespace ptmx {
namespace {

using ordered_json = nlohmann::ordered_json;

std::size_t ParseOffset(const LineReader &reader, std::string_view field,
                        const char *what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    reader.Fail(std::string(what) + " offset is not a non-negative integer: '" +
                std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> Columns(const LineReader &reader,
                                      std::string_view line, std::size_t n) {
  auto cols = SplitOn(line, '\t');
  if (cols.size() != n) {
    reader.Fail("expected " + std::to_string(n) + " tab-separated columns, got " +
                std::to_string(cols.size()));
  }
  return cols;
}

}  // namespace

void GeneProteinMap::Add(std::string ncbi_id, std::vector<std::string> accessions) {
  if (accessions.empty()) {
    throw ValidationError("gene " + ncbi_id + " has an empty accession list");
  }
  if (entries_.count(ncbi_id)) {
    throw ValidationError("gene " + ncbi_id + " listed twice");
  }
  order_.push_back(ncbi_id);
  entries_.emplace(std::move(ncbi_id), std::move(accessions));
}

const std::vector<std::string> *GeneProteinMap::Find(std::string_view ncbi_id) const {
  auto it = entries_.find(std::string(ncbi_id));
  return it == entries_.end() ? nullptr : &it->second;
}

bool LineReader::Next(std::string &line) {
  while (std::getline(in_, line)) {
    ++line_number_;
    if (line.empty() || line.front() == '#') continue;
    return true;
  }
  return false;
}

void LineReader::Fail(const std::string &message) const {
  throw ParseError(source_, line_number_, message);
}

void ForEachDocument(std::istream &in, const std::string &source,
                     const std::function<void(Document &&)> &fn) {
  LineReader reader(in, source);
  std::unordered_set<std::string> seen;
  std::string line;
  while (reader.Next(line)) {
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      reader.Fail(std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) reader.Fail("expected a JSON object");
    auto pmid = obj.find("pmid");
    auto text = obj.find("text");
    if (pmid == obj.end() || !pmid->is_string()) {
      reader.Fail("missing string field \"pmid\"");
    }
    if (text == obj.end() || !text->is_string()) {
      reader.Fail("missing string field \"text\"");
    }
    Document doc{pmid->get<std::string>(), text->get<std::string>()};
    if (!IsDigits(doc.pmid)) reader.Fail("pmid must be decimal digits: '" + doc.pmid + "'");
    if (doc.text.empty()) reader.Fail("empty text for pmid " + doc.pmid);
    if (!utf8::IsValid(doc.text)) reader.Fail("text is not valid UTF-8");
    if (!seen.insert(doc.pmid).second) reader.Fail("duplicate pmid " + doc.pmid);
    fn(std::move(doc));
  }
}

std::vector<Document> ParseDocuments(std::istream &in, const std::string &source) {
  std::vector<Document> docs;
  ForEachDocument(in, source, [&](Document &&d) { docs.push_back(std::move(d)); });
  return docs;
}

std::vector<GeneMention> ParseMentions(std::istream &in, const std::string &source) {
  LineReader reader(in, source);
  std::vector<GeneMention> out;
  std::string line;
  while (reader.Next(line)) {
    auto cols = Columns(reader, line, 5);
    GeneMention m;
    m.pmid = std::string(cols[0]);
    if (m.pmid.empty()) reader.Fail("empty pmid");
    m.start = ParseOffset(reader, cols[1], "start");
    m.end = ParseOffset(reader, cols[2], "end");
    if (m.start >= m.end) {
      reader.Fail("start " + std::to_string(m.start) + " is not before end " +
                  std::to_string(m.end));
    }
    m.surface = std::string(cols[3]);
    m.ncbi_id = std::string(cols[4]);
    if (m.ncbi_id.empty()) reader.Fail("empty gene id");
    out.push_back(std::move(m));
  }
  return out;
}

GeneProteinMap ParseGeneProteinMap(std::istream &in, const std::string &source) {
  LineReader reader(in, source);
  GeneProteinMap map;
  std::string line;
  while (reader.Next(line)) {
    auto cols = Columns(reader, line, 2);
    if (cols[0].empty()) reader.Fail("empty gene id");
    if (cols[1].empty()) reader.Fail("empty accession list for gene " + std::string(cols[0]));
    std::vector<std::string> accessions;
    for (std::string_view acc : SplitOn(cols[1], ',')) {
      if (acc.empty()) reader.Fail("empty accession in list for gene " + std::string(cols[0]));
      accessions.emplace_back(acc);
    }
    if (map.Find(cols[0]) != nullptr) reader.Fail("gene " + std::string(cols[0]) + " listed twice");
    map.Add(std::string(cols[0]), std::move(accessions));
  }
  return map;
}

std::vector<KbRecord> ParseKbRecords(std::istream &in, const std::string &source) {
  LineReader reader(in, source);
  std::vector<KbRecord> out;
  std::string line;
  while (reader.Next(line)) {
    auto cols = Columns(reader, line, 4);
    if (cols[0].empty() || cols[1].empty() || cols[2].empty()) {
      reader.Fail("empty pmid or accession");
    }
    auto type = ParsePositiveClassName(cols[3]);
    if (!type) {
      reader.Fail("unknown interaction '" + std::string(cols[3]) +
                  "'; accepted: " + PositiveClassNames());
    }
    out.push_back(KbRecord{std::string(cols[0]), std::string(cols[1]),
                           std::string(cols[2]), *type});
  }
  return out;
}

void WriteDocument(std::ostream &out, const Document &doc) {
  ordered_json obj;
  obj["pmid"] = doc.pmid;
  obj["text"] = doc.text;
  out << obj.dump() << '\n';
}

void WriteDocuments(std::ostream &out, const std::vector<Document> &docs) {
  for (const Document &d : docs) WriteDocument(out, d);
}

void WriteMentions(std::ostream &out, const std::vector<GeneMention> &mentions) {
  for (const GeneMention &m : mentions) {
    out << m.pmid << '\t' << m.start << '\t' << m.end << '\t' << m.surface << '\t'
        << m.ncbi_id << '\n';
  }
}

void WriteGeneProteinMap(std::ostream &out, const GeneProteinMap &map) {
  for (const std::string &gene : map.gene_ids()) {
    out << gene << '\t';
    const auto &accs = *map.Find(gene);
    for (std::size_t i = 0; i < accs.size(); ++i) {
      if (i) out << ',';
      out << accs[i];
    }
    out << '\n';
  }
}

void WriteKbRecords(std::ostream &out, const std::vector<KbRecord> &records) {
  for (const KbRecord &r : records) {
    out << r.pmid << '\t' << r.participant_a << '\t' << r.participant_b << '\t'
        << ClassName(r.interaction) << '\n';
  }
}

}  // namespace ptmx
