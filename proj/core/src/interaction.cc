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

#include "ptmx/interaction.h"

#include "ptmx/errors.h"
#include "ptmx/text.h"

namespace ptmx {
namespace {

constexpr std::array<std::string_view, kNumClasses> kNames = {
    "negative",     "acetylation",     "dephosphorylation", "deubiquitination",
    "methylation", "phosphorylation", "ubiquitination",
};

}  // namespace

InteractionType ClassFromIndex(std::size_t index) {
  if (index >= kNumClasses) {
    throw ValidationError("class index out of range: " + std::to_string(index));
  }
  return static_cast<InteractionType>(index);
}

std::string_view ClassName(InteractionType t) { return kNames[ClassIndex(t)]; }

std::optional<InteractionType> ParseClassName(std::string_view name) {
  std::string lower = AsciiLower(name);
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    if (lower == kNames[i]) return static_cast<InteractionType>(i);
  }
  return std::nullopt;
}

std::optional<InteractionType> ParsePositiveClassName(std::string_view name) {
  auto t = ParseClassName(name);
  if (t && IsPositive(*t)) return t;
  return std::nullopt;
}

std::string PositiveClassNames() {
  std::string out;
  for (InteractionType t : kPositiveClasses) {
    if (!out.empty()) out += ", ";
    out += ClassName(t);
  }
  return out;
}

StemTable StemTable::Default() {
  StemTable table;
  table.set_stems(InteractionType::kAcetylation, {"acetyl"});
  table.set_stems(InteractionType::kDephosphorylation, {"dephosphoryl"});
  table.set_stems(InteractionType::kDeubiquitination, {"deubiquitin"});
  table.set_stems(InteractionType::kMethylation, {"methyl"});
  table.set_stems(InteractionType::kPhosphorylation, {"phosphoryl"});
  table.set_stems(InteractionType::kUbiquitination, {"ubiquitin"});
  return table;
}

StemTable StemTable::Parse(std::string_view content) {
  StemTable table;
  std::size_t line_no = 0;
  for (std::string_view line : SplitOn(content, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto cols = SplitOn(line, '\t');
    if (cols.size() != 2) {
      throw ParseError("stems", line_no, "expected 2 tab-separated columns");
    }
    auto cls = ParsePositiveClassName(cols[0]);
    if (!cls) {
      throw ParseError("stems", line_no,
                       "unknown class '" + std::string(cols[0]) +
                           "'; accepted: " + PositiveClassNames());
    }
    std::vector<std::string> stems;
    for (std::string_view s : SplitOn(cols[1], ',')) {
      if (s.empty()) throw ParseError("stems", line_no, "empty stem");
      stems.push_back(AsciiLower(s));
    }
    table.set_stems(*cls, std::move(stems));
  }
  return table;
}

const std::vector<std::string> &StemTable::stems(InteractionType t) const {
  return stems_[ClassIndex(t)];
}

void StemTable::set_stems(InteractionType t, std::vector<std::string> stems) {
  if (!IsPositive(t)) throw ValidationError("negative class has no stems");
  stems_[ClassIndex(t)] = std::move(stems);
}

bool StemTable::Mentions(InteractionType t, std::string_view text) const {
  for (const std::string &stem : stems(t)) {
    if (ContainsIgnoreCase(text, stem)) return true;
  }
  return false;
}

}  // namespace ptmx
