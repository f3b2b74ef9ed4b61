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

#ifndef PTMX_CORPUS_IO_H_
#define PTMX_CORPUS_IO_H_

#include <cstddef>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ptmx/interaction.h"

namespace ptmx {

// An abstract. `pmid` is a non-empty run of decimal digits, `text` is
// non-empty UTF-8.
struct Document {
  std::string pmid;
  std::string text;

  bool operator==(const Document &) const = default;
};

// One NER hit. Offsets count Unicode scalar values, end exclusive.
struct GeneMention {
  std::string pmid;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  std::string ncbi_id;

  bool operator==(const GeneMention &) const = default;
};

// NCBI gene id -> ordered list of protein accessions. Entry order and
// accession order are preserved exactly as read.
class GeneProteinMap {
 public:
  // Throws ValidationError on an empty list or a repeated gene id.
  void Add(std::string ncbi_id, std::vector<std::string> accessions);

  // nullptr when the gene is unknown.
  const std::vector<std::string> *Find(std::string_view ncbi_id) const;

  std::size_t size() const { return order_.size(); }
  const std::vector<std::string> &gene_ids() const { return order_; }

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
  std::vector<std::string> order_;
};

// A knowledge-base interaction. Self relations are allowed here.
struct KbRecord {
  std::string pmid;
  std::string participant_a;
  std::string participant_b;
  InteractionType interaction = InteractionType::kPhosphorylation;

  bool operator==(const KbRecord &) const = default;
};

// Line-by-line reader shared by all line-oriented formats. Skips blank lines
// and '#' header/comment lines, and tracks the 1-based line number.
class LineReader {
 public:
  LineReader(std::istream &in, std::string source)
      : in_(in), source_(std::move(source)) {}

  // Next data line, or false at end of stream.
  bool Next(std::string &line);

  std::size_t line_number() const { return line_number_; }
  const std::string &source() const { return source_; }

  [[noreturn]] void Fail(const std::string &message) const;

 private:
  std::istream &in_;
  std::string source_;
  std::size_t line_number_ = 0;
};

// JSON-lines {"pmid","text"}. Throws ParseError on malformed lines, invalid
// fields or a duplicate pmid.
std::vector<Document> ParseDocuments(std::istream &in,
                                     const std::string &source = "documents");

// Streaming form of ParseDocuments; the callback sees documents in file order.
void ForEachDocument(std::istream &in, const std::string &source,
                     const std::function<void(Document &&)> &fn);

// TSV: pmid, start, end, surface, ncbi_id.
std::vector<GeneMention> ParseMentions(std::istream &in,
                                       const std::string &source = "mentions");

// TSV: ncbi_id, comma-separated accessions.
GeneProteinMap ParseGeneProteinMap(std::istream &in,
                                   const std::string &source = "gene map");

// TSV: pmid, accession_a, accession_b, interaction name.
std::vector<KbRecord> ParseKbRecords(std::istream &in,
                                     const std::string &source = "kb");

void WriteDocument(std::ostream &out, const Document &doc);
void WriteDocuments(std::ostream &out, const std::vector<Document> &docs);
void WriteMentions(std::ostream &out, const std::vector<GeneMention> &mentions);
void WriteGeneProteinMap(std::ostream &out, const GeneProteinMap &map);
void WriteKbRecords(std::ostream &out, const std::vector<KbRecord> &records);

}  // namespace ptmx

#endif  // PTMX_CORPUS_IO_H_
