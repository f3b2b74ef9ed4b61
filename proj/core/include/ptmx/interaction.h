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

#ifndef PTMX_INTERACTION_H_
#define PTMX_INTERACTION_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ptmx {

// Relation label between two proteins. The numeric values are the canonical
// class indices used in every probability vector: negative first, then the
// positive PTM classes in alphabetical order.
enum class InteractionType : int {
  kNegative = 0,
  kAcetylation = 1,
  kDephosphorylation = 2,
  kDeubiquitination = 3,
  kMethylation = 4,
  kPhosphorylation = 5,
  kUbiquitination = 6,
};

inline constexpr std::size_t kNumClasses = 7;
inline constexpr std::size_t kNumPositiveClasses = 6;

inline constexpr std::array<InteractionType, kNumClasses> kAllClasses = {
    InteractionType::kNegative,          InteractionType::kAcetylation,
    InteractionType::kDephosphorylation, InteractionType::kDeubiquitination,
    InteractionType::kMethylation,       InteractionType::kPhosphorylation,
    InteractionType::kUbiquitination,
};

inline constexpr std::array<InteractionType, kNumPositiveClasses>
    kPositiveClasses = {
        InteractionType::kAcetylation,    InteractionType::kDephosphorylation,
        InteractionType::kDeubiquitination, InteractionType::kMethylation,
        InteractionType::kPhosphorylation, InteractionType::kUbiquitination,
};

constexpr std::size_t ClassIndex(InteractionType t) {
  return static_cast<std::size_t>(t);
}
constexpr bool IsPositive(InteractionType t) {
  return t != InteractionType::kNegative;
}
InteractionType ClassFromIndex(std::size_t index);

// Lowercase canonical name ("negative", "acetylation", ...).
std::string_view ClassName(InteractionType t);

// Case-insensitive lookup over all seven names.
std::optional<InteractionType> ParseClassName(std::string_view name);

// Case-insensitive lookup restricted to the six positive classes.
std::optional<InteractionType> ParsePositiveClassName(std::string_view name);

// Comma-separated list of the positive class names, for error messages.
std::string PositiveClassNames();

// Trigger stems per positive class. A class without an entry has no stems and
// never passes a trigger check.
class StemTable {
 public:
  // phosphoryl, dephosphoryl, methyl, acetyl, ubiquitin, deubiquitin.
  static StemTable Default();

  // Parses "class<TAB>stem,stem,..." lines; '#' lines and blank lines are
  // skipped. Classes not listed keep no stems.
  static StemTable Parse(std::string_view content);

  const std::vector<std::string> &stems(InteractionType t) const;
  void set_stems(InteractionType t, std::vector<std::string> stems);

  // True if any stem of `t` occurs case-insensitively in `text`.
  bool Mentions(InteractionType t, std::string_view text) const;

 private:
  std::array<std::vector<std::string>, kNumClasses> stems_;
};

}  // namespace ptmx

#endif  // PTMX_INTERACTION_H_
