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

#ifndef PTMX_CURATION_H_
#define PTMX_CURATION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ptmx/aggregation.h"
#include "ptmx/calibration.h"
#include "ptmx/interaction.h"

namespace ptmx {

enum class Decision { kCorrect, kIncorrect, kUnsure };

// Why an incorrect prediction is wrong.
enum class ErrorCategory {
  kDnaMethylation,
  kNer,
  kNoTriggerWord,
  kOppositeType,
  kRelationshipNotDescribed,
  kNotRelatedToPpi,
};
inline constexpr std::size_t kNumCategories = 6;
inline constexpr std::array<ErrorCategory, kNumCategories> kAllCategories = {
    ErrorCategory::kDnaMethylation,           ErrorCategory::kNer,
    ErrorCategory::kNoTriggerWord,            ErrorCategory::kOppositeType,
    ErrorCategory::kRelationshipNotDescribed, ErrorCategory::kNotRelatedToPpi,
};

std::string_view DecisionName(Decision d);
std::optional<Decision> ParseDecision(std::string_view name);
// "dna-methylation", "ner", "no-trigger-word", "opposite-type",
// "relationship-not-described", "not-related-to-ppi".
std::string_view CategoryName(ErrorCategory c);
std::optional<ErrorCategory> ParseCategory(std::string_view name);

struct Verdict {
  std::string item_id;
  Decision decision = Decision::kCorrect;
  std::optional<ErrorCategory> category;  // present iff decision is incorrect
  std::string reviewer;
  std::string timestamp;  // filled by the store's clock

  // Equal apart from the timestamp.
  bool SameDecision(const Verdict &other) const;
  bool operator==(const Verdict &) const = default;
};

// Throws ValidationError unless the category is present exactly when the
// decision is incorrect.
void ValidateVerdict(const Verdict &v);

// Offsets in Unicode scalar values, end exclusive.
struct HighlightSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string kind;   // "participant" or "trigger"
  std::string label;  // the participant token, or the PTM name

  bool operator==(const HighlightSpan &) const = default;
};

// Participant spans are whole-word occurrences of PROTPART1/PROTPART2 or of
// the pair's accessions. Trigger spans cover every word containing a stem of
// `ptm` that is not part of a longer stem of another class. Sorted by start.
std::vector<HighlightSpan> ComputeHighlights(std::string_view text, const ProteinPair &pair,
                                             InteractionType ptm, const StemTable &stems);

enum class ItemStatus { kPending, kReviewed };
std::string_view StatusName(ItemStatus s);
std::optional<ItemStatus> ParseStatus(std::string_view name);

struct CurationItem {
  std::string id;  // pmid:low:high
  TripletKey triplet;
  std::string pmid;
  std::string text;
  std::vector<HighlightSpan> highlights;
  double confidence = 0;
  double std = 0;
  ItemStatus status = ItemStatus::kPending;
  std::optional<Verdict> verdict;

  bool operator==(const CurationItem &) const = default;
};

// Builds a pending item for a positive prediction over `text`.
CurationItem MakeItem(const PredictionRecord &p, std::string text, const StemTable &stems);

nlohmann::ordered_json ItemToJson(const CurationItem &item);
nlohmann::ordered_json VerdictToJson(const Verdict &v);
// Throws ValidationError on schema violations.
CurationItem ItemFromJson(const nlohmann::json &obj);
Verdict VerdictFromJson(const nlohmann::json &obj);

struct PrecisionRow {
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t unsure = 0;
  std::array<std::size_t, kNumCategories> categories{};

  void Add(const Verdict &v);
  std::size_t total() const { return correct + incorrect + unsure; }
  // correct / (correct + incorrect); absent without decided verdicts.
  std::optional<double> strict_precision() const;
  // correct / (correct + incorrect + unsure); absent without verdicts.
  std::optional<double> inclusive_precision() const;
  bool operator==(const PrecisionRow &) const = default;
};

struct PrecisionReport {
  std::array<PrecisionRow, kNumClasses> per_ptm{};
  PrecisionRow overall;

  void Add(InteractionType ptm, const Verdict &v);
  bool operator==(const PrecisionReport &) const = default;
};

nlohmann::ordered_json PrecisionReportToJson(const PrecisionReport &report);

// Up to `per_ptm` pending items per positive class, drawn uniformly without
// replacement by a partial Fisher-Yates shuffle over the id-sorted pending
// items of that class. Throws ValidationError when per_ptm == 0.
std::vector<CurationItem> SampleReviewBatch(std::span<const CurationItem> items,
                                            std::size_t per_ptm, std::uint64_t seed);

// UTC "YYYY-MM-DDTHH:MM:SSZ".
std::string UtcNow();

struct StoreOptions {
  // Write a snapshot after this many events (0 disables periodic snapshots).
  std::size_t snapshot_every = 256;
  std::function<std::string()> clock = UtcNow;
  // fsync the log before acknowledging a write.
  bool sync = true;
};

// Review queue persisted as an append-only JSON-lines event log
// (events.jsonl) plus a periodic snapshot (snapshot.json) in one directory.
// Writers are serialized; readers run concurrently with each other.
class CurationStore {
 public:
  // Restores state from the snapshot and replays later log events. A torn
  // final log line from an interrupted write is discarded.
  static std::unique_ptr<CurationStore> Open(const std::filesystem::path &dir,
                                             StoreOptions options = {});
  ~CurationStore();

  CurationStore(const CurationStore &) = delete;
  CurationStore &operator=(const CurationStore &) = delete;

  // Adds items whose id is new; an identical re-load is skipped, a differing
  // one raises ConflictError. Returns the number added.
  std::size_t LoadItems(std::span<const CurationItem> items);

  // Throws NotFoundError.
  CurationItem Get(const std::string &id) const;
  // Sorted by id; limit 0 means unlimited.
  std::vector<CurationItem> List(std::optional<ItemStatus> status,
                                 std::optional<InteractionType> ptm, std::size_t limit) const;
  std::vector<CurationItem> Items() const;

  // Durably records the verdict and returns the reviewed item. Re-submitting
  // the identical decision is a no-op; a different one raises ConflictError.
  CurationItem RecordVerdict(Verdict v);

  PrecisionReport Report() const;
  std::vector<CurationItem> SampleBatch(std::size_t per_ptm, std::uint64_t seed) const;

  void Snapshot();
  std::size_t event_count() const;
  std::size_t discarded_bytes() const;  // torn tail dropped at open
  const std::filesystem::path &dir() const;

 private:
  class Impl;
  explicit CurationStore(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

// Recomputes the precision report from an event log alone.
PrecisionReport ReportFromLog(const std::filesystem::path &log_path);

}  // namespace ptmx

#endif  // PTMX_CURATION_H_
