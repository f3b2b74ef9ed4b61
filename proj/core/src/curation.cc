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

#include "ptmx/curation.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <sstream>

#include "ptmx/errors.h"
#include "ptmx/hashing.h"
#include "ptmx/text.h"
#include "ptmx/transform.h"
#include "ptmx/utf8.h"

namespace ptmx {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 3> kDecisionNames = {"correct", "incorrect", "unsure"};
constexpr std::array<std::string_view, kNumCategories> kCategoryNames = {
    "dna-methylation", "ner", "no-trigger-word", "opposite-type", "relationship-not-described",
    "not-related-to-ppi",
};
constexpr std::array<std::string_view, 2> kStatusNames = {"pending", "reviewed"};

constexpr const char *kLogName = "events.jsonl";
constexpr const char *kSnapshotName = "snapshot.json";

std::string Errno(const std::string &what) { return what + ": " + std::strerror(errno); }

// True if the stem match at `pos` in lowercase `word` belongs to a longer stem
// of another class.
bool Shadowed(std::string_view word, std::size_t pos, std::string_view stem, InteractionType cls,
              const StemTable &stems) {
  for (InteractionType other : kPositiveClasses) {
    if (other == cls) continue;
    for (const std::string &longer : stems.stems(other)) {
      if (longer.size() <= stem.size()) continue;
      std::string lower = AsciiLower(longer);
      std::size_t k = lower.find(AsciiLower(stem));
      if (k == std::string::npos || k > pos) continue;
      if (word.substr(pos - k, lower.size()) == lower) return true;
    }
  }
  return false;
}

bool HasTrigger(std::string_view word, InteractionType cls, const StemTable &stems) {
  std::string lower = AsciiLower(word);
  for (const std::string &stem : stems.stems(cls)) {
    std::string s = AsciiLower(stem);
    for (std::size_t pos = lower.find(s); pos != std::string::npos; pos = lower.find(s, pos + 1)) {
      if (!Shadowed(lower, pos, s, cls, stems)) return true;
    }
  }
  return false;
}

std::string RequireString(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ValidationError(std::string("missing string field \"") + key + "\"");
  }
  return it->get<std::string>();
}

double RequireNumber(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw ValidationError(std::string("missing number field \"") + key + "\"");
  }
  return it->get<double>();
}

void WriteAll(int fd, std::string_view data) {
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(Errno("write"));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

void SyncDir(const std::filesystem::path &dir) {
  int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

}  // namespace

std::string_view DecisionName(Decision d) { return kDecisionNames[static_cast<int>(d)]; }

std::optional<Decision> ParseDecision(std::string_view name) {
  for (std::size_t i = 0; i < kDecisionNames.size(); ++i) {
    if (kDecisionNames[i] == name) return static_cast<Decision>(i);
  }
  return std::nullopt;
}

std::string_view CategoryName(ErrorCategory c) { return kCategoryNames[static_cast<int>(c)]; }

std::optional<ErrorCategory> ParseCategory(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == name) return static_cast<ErrorCategory>(i);
  }
  return std::nullopt;
}

std::string_view StatusName(ItemStatus s) { return kStatusNames[static_cast<int>(s)]; }

std::optional<ItemStatus> ParseStatus(std::string_view name) {
  for (std::size_t i = 0; i < kStatusNames.size(); ++i) {
    if (kStatusNames[i] == name) return static_cast<ItemStatus>(i);
  }
  return std::nullopt;
}

bool Verdict::SameDecision(const Verdict &o) const {
  return item_id == o.item_id && decision == o.decision && category == o.category &&
         reviewer == o.reviewer;
}

void ValidateVerdict(const Verdict &v) {
  if (v.item_id.empty()) throw ValidationError("verdict has no item id");
  if (v.decision == Decision::kIncorrect && !v.category) {
    throw ValidationError("an incorrect verdict needs a category");
  }
  if (v.decision != Decision::kIncorrect && v.category) {
    throw ValidationError("only incorrect verdicts carry a category");
  }
}

std::vector<HighlightSpan> ComputeHighlights(std::string_view text, const ProteinPair &pair,
                                             InteractionType ptm, const StemTable &stems) {
  const std::vector<std::size_t> offsets = utf8::ScalarOffsets(text);
  std::vector<HighlightSpan> spans;
  for (const Token &tok : WordTokens(text)) {
    std::string_view word = text.substr(tok.begin, tok.end - tok.begin);
    std::string kind;
    if (word == kParticipantMarker1 || word == kParticipantMarker2 || word == pair.low() ||
        word == pair.high()) {
      kind = "participant";
    } else if (IsPositive(ptm) && HasTrigger(word, ptm, stems)) {
      kind = "trigger";
    } else {
      continue;
    }
    HighlightSpan s;
    s.start = utf8::ScalarIndexOf(offsets, tok.begin);
    s.end = utf8::ScalarIndexOf(offsets, tok.end);
    s.kind = kind;
    s.label = kind == "participant" ? std::string(word) : std::string(ClassName(ptm));
    spans.push_back(std::move(s));
  }
  return spans;
}

CurationItem MakeItem(const PredictionRecord &p, std::string text, const StemTable &stems) {
  if (!IsPositive(p.pred)) throw ValidationError("item " + p.id + " is not a positive prediction");
  CurationItem item;
  item.id = SampleId(p.pmid, p.pair);
  item.triplet = Canonicalize(p.pair.low(), p.pair.high(), p.pred);
  item.pmid = p.pmid;
  item.highlights = ComputeHighlights(text, p.pair, p.pred, stems);
  item.text = std::move(text);
  item.confidence = p.conf;
  item.std = p.std;
  return item;
}

ordered_json VerdictToJson(const Verdict &v) {
  ordered_json obj;
  obj["item_id"] = v.item_id;
  obj["decision"] = DecisionName(v.decision);
  obj["category"] = v.category ? ordered_json(CategoryName(*v.category)) : ordered_json(nullptr);
  obj["reviewer"] = v.reviewer;
  obj["timestamp"] = v.timestamp;
  return obj;
}

Verdict VerdictFromJson(const json &obj) {
  if (!obj.is_object()) throw ValidationError("verdict must be a JSON object");
  Verdict v;
  v.item_id = RequireString(obj, "item_id");
  std::string decision = RequireString(obj, "decision");
  auto d = ParseDecision(decision);
  if (!d) throw ValidationError("unknown decision '" + decision + "'");
  v.decision = *d;
  if (auto it = obj.find("category"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw ValidationError("category must be a string");
    auto c = ParseCategory(it->get<std::string>());
    if (!c) throw ValidationError("unknown category '" + it->get<std::string>() + "'");
    v.category = *c;
  }
  if (auto it = obj.find("reviewer"); it != obj.end() && it->is_string()) {
    v.reviewer = it->get<std::string>();
  }
  if (auto it = obj.find("timestamp"); it != obj.end() && it->is_string()) {
    v.timestamp = it->get<std::string>();
  }
  ValidateVerdict(v);
  return v;
}

ordered_json ItemToJson(const CurationItem &item) {
  ordered_json obj;
  obj["id"] = item.id;
  obj["pmid"] = item.pmid;
  obj["a"] = item.triplet.low;
  obj["ptm"] = ClassName(item.triplet.ptm);
  obj["b"] = item.triplet.high;
  obj["text"] = item.text;
  obj["confidence"] = item.confidence;
  obj["std"] = item.std;
  obj["status"] = StatusName(item.status);
  ordered_json spans = ordered_json::array();
  for (const HighlightSpan &s : item.highlights) {
    ordered_json e;
    e["start"] = s.start;
    e["end"] = s.end;
    e["kind"] = s.kind;
    e["label"] = s.label;
    spans.push_back(e);
  }
  obj["highlights"] = spans;
  obj["verdict"] = item.verdict ? VerdictToJson(*item.verdict) : ordered_json(nullptr);
  return obj;
}

CurationItem ItemFromJson(const json &obj) {
  if (!obj.is_object()) throw ValidationError("item must be a JSON object");
  CurationItem item;
  item.id = RequireString(obj, "id");
  item.pmid = RequireString(obj, "pmid");
  std::string ptm = RequireString(obj, "ptm");
  auto cls = ParsePositiveClassName(ptm);
  if (!cls) throw ValidationError("unknown interaction '" + ptm + "'");
  item.triplet = Canonicalize(RequireString(obj, "a"), RequireString(obj, "b"), *cls);
  item.text = RequireString(obj, "text");
  item.confidence = RequireNumber(obj, "confidence");
  item.std = RequireNumber(obj, "std");
  std::string status = RequireString(obj, "status");
  auto st = ParseStatus(status);
  if (!st) throw ValidationError("unknown status '" + status + "'");
  item.status = *st;
  auto spans = obj.find("highlights");
  if (spans == obj.end() || !spans->is_array()) throw ValidationError("missing highlights");
  for (const json &e : *spans) {
    HighlightSpan s;
    s.start = static_cast<std::size_t>(RequireNumber(e, "start"));
    s.end = static_cast<std::size_t>(RequireNumber(e, "end"));
    s.kind = RequireString(e, "kind");
    s.label = RequireString(e, "label");
    item.highlights.push_back(std::move(s));
  }
  if (auto v = obj.find("verdict"); v != obj.end() && !v->is_null()) {
    item.verdict = VerdictFromJson(*v);
  }
  if ((item.status == ItemStatus::kReviewed) != item.verdict.has_value()) {
    throw ValidationError("item " + item.id + ": status and verdict disagree");
  }
  return item;
}

void PrecisionRow::Add(const Verdict &v) {
  switch (v.decision) {
    case Decision::kCorrect:
      ++correct;
      break;
    case Decision::kIncorrect:
      ++incorrect;
      if (v.category) ++categories[static_cast<int>(*v.category)];
      break;
    case Decision::kUnsure:
      ++unsure;
      break;
  }
}

std::optional<double> PrecisionRow::strict_precision() const {
  if (correct + incorrect == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(correct + incorrect);
}

std::optional<double> PrecisionRow::inclusive_precision() const {
  if (total() == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(total());
}

void PrecisionReport::Add(InteractionType ptm, const Verdict &v) {
  per_ptm[ClassIndex(ptm)].Add(v);
  overall.Add(v);
}

namespace {

ordered_json RowJson(const PrecisionRow &row) {
  ordered_json obj;
  obj["correct"] = row.correct;
  obj["incorrect"] = row.incorrect;
  obj["unsure"] = row.unsure;
  obj["total"] = row.total();
  auto opt = [](std::optional<double> v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  obj["strict_precision"] = opt(row.strict_precision());
  obj["inclusive_precision"] = opt(row.inclusive_precision());
  ordered_json cats = ordered_json::object();
  for (ErrorCategory c : kAllCategories) {
    cats[std::string(CategoryName(c))] = row.categories[static_cast<int>(c)];
  }
  obj["categories"] = cats;
  return obj;
}

}  // namespace

ordered_json PrecisionReportToJson(const PrecisionReport &report) {
  ordered_json obj;
  obj["overall"] = RowJson(report.overall);
  ordered_json per = ordered_json::object();
  for (InteractionType t : kPositiveClasses) {
    const PrecisionRow &row = report.per_ptm[ClassIndex(t)];
    if (row.total() > 0) per[std::string(ClassName(t))] = RowJson(row);
  }
  obj["per_ptm"] = per;
  return obj;
}

std::vector<CurationItem> SampleReviewBatch(std::span<const CurationItem> items,
                                            std::size_t per_ptm, std::uint64_t seed) {
  if (per_ptm == 0) throw ValidationError("per_ptm must be at least 1");
  std::array<std::vector<const CurationItem *>, kNumClasses> pending;
  for (const CurationItem &item : items) {
    if (item.status == ItemStatus::kPending) pending[ClassIndex(item.triplet.ptm)].push_back(&item);
  }
  std::vector<CurationItem> out;
  for (InteractionType t : kPositiveClasses) {
    auto &pool = pending[ClassIndex(t)];
    std::sort(pool.begin(), pool.end(),
              [](const CurationItem *a, const CurationItem *b) { return a->id < b->id; });
    std::mt19937_64 rng(Mix64(seed ^ Mix64(ClassIndex(t) + 1)));
    const std::size_t take = std::min(per_ptm, pool.size());
    for (std::size_t i = 0; i < take; ++i) {
      std::size_t j = i + static_cast<std::size_t>(UniformBelow(rng, pool.size() - i));
      std::swap(pool[i], pool[j]);
      out.push_back(*pool[i]);
    }
  }
  return out;
}

std::string UtcNow() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class CurationStore::Impl {
 public:
  Impl(std::filesystem::path dir, StoreOptions options)
      : dir_(std::move(dir)), options_(std::move(options)) {
    if (!options_.clock) options_.clock = UtcNow;
  }

  ~Impl() {
    if (fd_ >= 0) ::close(fd_);
  }

  void Open() {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error("cannot create " + dir_.string() + ": " + ec.message());

    std::size_t snapshot_events = 0;
    const auto snap_path = dir_ / kSnapshotName;
    if (std::filesystem::exists(snap_path)) {
      std::ifstream in(snap_path);
      json snap = json::parse(in, nullptr, false);
      if (snap.is_discarded() || !snap.is_object() || !snap.contains("events") ||
          !snap.contains("items")) {
        throw ParseError(snap_path.string(), 0, "corrupt snapshot");
      }
      snapshot_events = snap["events"].get<std::size_t>();
      try {
        for (const json &e : snap["items"]) Insert(ItemFromJson(e));
      } catch (const Error &e) {
        throw ParseError(snap_path.string(), 0, e.what());
      }
    }

    const auto log_path = dir_ / kLogName;
    std::string content;
    if (std::filesystem::exists(log_path)) {
      std::ifstream in(log_path, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      content = ss.str();
    }
    // Everything after the last newline is an unacknowledged partial write.
    std::size_t good = content.rfind('\n');
    good = good == std::string::npos ? 0 : good + 1;
    discarded_ = content.size() - good;

    std::size_t line_no = 0, begin = 0;
    while (begin < good) {
      std::size_t end = content.find('\n', begin);
      std::string_view line(content.data() + begin, end - begin);
      ++line_no;
      begin = end + 1;
      if (line.empty()) continue;
      ++events_;
      if (events_ <= snapshot_events) continue;
      try {
        json ev = json::parse(line);
        Apply(ev);
      } catch (const json::exception &e) {
        throw ParseError(log_path.string(), line_no, e.what());
      } catch (const Error &e) {
        throw ParseError(log_path.string(), line_no, e.what());
      }
    }
    if (events_ < snapshot_events) {
      throw ParseError(snap_path.string(), 0, "snapshot is ahead of the event log");
    }

    fd_ = ::open(log_path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error(Errno("open " + log_path.string()));
    if (discarded_ > 0) {
      if (::ftruncate(fd_, static_cast<off_t>(good)) != 0) throw Error(Errno("truncate log"));
      ::fsync(fd_);
    }
  }

  std::size_t LoadItems(std::span<const CurationItem> items) {
    std::unique_lock lock(mu_);
    std::size_t added = 0;
    for (const CurationItem &raw : items) {
      CurationItem item = raw;
      item.status = ItemStatus::kPending;
      item.verdict.reset();
      auto it = items_.find(item.id);
      if (it != items_.end()) {
        CurationItem existing = it->second;
        existing.status = ItemStatus::kPending;
        existing.verdict.reset();
        if (existing == item) continue;
        throw ConflictError("item " + item.id + " already loaded with different content");
      }
      ordered_json ev;
      ev["event"] = "load";
      ev["item"] = ItemToJson(item);
      Append(ev);
      Insert(std::move(item));
      ++added;
    }
    MaybeSnapshot();
    return added;
  }

  CurationItem Get(const std::string &id) const {
    std::shared_lock lock(mu_);
    auto it = items_.find(id);
    if (it == items_.end()) throw NotFoundError("no item " + id);
    return it->second;
  }

  std::vector<CurationItem> List(std::optional<ItemStatus> status,
                                 std::optional<InteractionType> ptm, std::size_t limit) const {
    std::shared_lock lock(mu_);
    std::vector<CurationItem> out;
    for (const auto &[id, item] : items_) {
      if (status && item.status != *status) continue;
      if (ptm && item.triplet.ptm != *ptm) continue;
      out.push_back(item);
      if (limit && out.size() >= limit) break;
    }
    return out;
  }

  CurationItem RecordVerdict(Verdict v) {
    ValidateVerdict(v);
    std::unique_lock lock(mu_);
    auto it = items_.find(v.item_id);
    if (it == items_.end()) throw NotFoundError("no item " + v.item_id);
    if (it->second.verdict) {
      if (it->second.verdict->SameDecision(v)) return it->second;
      throw ConflictError("item " + v.item_id + " was already reviewed as " +
                          std::string(DecisionName(it->second.verdict->decision)));
    }
    v.timestamp = options_.clock();
    ordered_json ev = {{"event", "verdict"}};
    ev.update(VerdictToJson(v));
    Append(ev);
    ApplyVerdict(std::move(v));
    CurationItem out = it->second;
    MaybeSnapshot();
    return out;
  }

  PrecisionReport Report() const {
    std::shared_lock lock(mu_);
    return report_;
  }

  std::vector<CurationItem> Items() const { return List(std::nullopt, std::nullopt, 0); }

  void Snapshot() {
    std::unique_lock lock(mu_);
    WriteSnapshot();
  }

  std::size_t event_count() const {
    std::shared_lock lock(mu_);
    return events_;
  }

  std::size_t discarded() const { return discarded_; }
  const std::filesystem::path &dir() const { return dir_; }

 private:
  void Insert(CurationItem item) {
    std::string id = item.id;
    if (item.verdict) report_.Add(item.triplet.ptm, *item.verdict);
    if (!items_.emplace(id, std::move(item)).second) throw ValidationError("duplicate item " + id);
  }

  void ApplyVerdict(Verdict v) {
    auto it = items_.find(v.item_id);
    if (it == items_.end()) throw ValidationError("verdict for unknown item " + v.item_id);
    if (it->second.verdict) throw ValidationError("second verdict for item " + v.item_id);
    report_.Add(it->second.triplet.ptm, v);
    it->second.status = ItemStatus::kReviewed;
    it->second.verdict = std::move(v);
  }

  void Apply(const json &ev) {
    std::string kind = RequireString(ev, "event");
    if (kind == "load") {
      if (!ev.contains("item")) throw ValidationError("load event without item");
      Insert(ItemFromJson(ev["item"]));
    } else if (kind == "verdict") {
      ApplyVerdict(VerdictFromJson(ev));
    } else {
      throw ValidationError("unknown event '" + kind + "'");
    }
  }

  // Caller holds the unique lock.
  void Append(const ordered_json &ev) {
    std::string line = ev.dump() + "\n";
    WriteAll(fd_, line);
    if (options_.sync && ::fsync(fd_) != 0) throw Error(Errno("fsync event log"));
    ++events_;
    ++since_snapshot_;
  }

  void MaybeSnapshot() {
    if (options_.snapshot_every && since_snapshot_ >= options_.snapshot_every) WriteSnapshot();
  }

  void WriteSnapshot() {
    ordered_json snap;
    snap["events"] = events_;
    ordered_json arr = ordered_json::array();
    for (const auto &[id, item] : items_) arr.push_back(ItemToJson(item));
    snap["items"] = arr;
    const auto tmp = dir_ / (std::string(kSnapshotName) + ".tmp");
    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) throw Error(Errno("open " + tmp.string()));
    try {
      WriteAll(fd, snap.dump() + "\n");
      if (options_.sync) ::fsync(fd);
    } catch (...) {
      ::close(fd);
      throw;
    }
    ::close(fd);
    std::filesystem::rename(tmp, dir_ / kSnapshotName);
    if (options_.sync) SyncDir(dir_);
    since_snapshot_ = 0;
  }

  std::filesystem::path dir_;
  StoreOptions options_;
  mutable std::shared_mutex mu_;
  std::map<std::string, CurationItem> items_;
  PrecisionReport report_;
  std::size_t events_ = 0;
  std::size_t since_snapshot_ = 0;
  std::size_t discarded_ = 0;
  int fd_ = -1;
};

CurationStore::CurationStore(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
CurationStore::~CurationStore() = default;

std::unique_ptr<CurationStore> CurationStore::Open(const std::filesystem::path &dir,
                                                   StoreOptions options) {
  auto impl = std::make_unique<Impl>(dir, std::move(options));
  impl->Open();
  return std::unique_ptr<CurationStore>(new CurationStore(std::move(impl)));
}

std::size_t CurationStore::LoadItems(std::span<const CurationItem> items) {
  return impl_->LoadItems(items);
}
CurationItem CurationStore::Get(const std::string &id) const { return impl_->Get(id); }
std::vector<CurationItem> CurationStore::List(std::optional<ItemStatus> status,
                                              std::optional<InteractionType> ptm,
                                              std::size_t limit) const {
  return impl_->List(status, ptm, limit);
}
std::vector<CurationItem> CurationStore::Items() const { return impl_->Items(); }
CurationItem CurationStore::RecordVerdict(Verdict v) { return impl_->RecordVerdict(std::move(v)); }
PrecisionReport CurationStore::Report() const { return impl_->Report(); }
std::vector<CurationItem> CurationStore::SampleBatch(std::size_t per_ptm,
                                                     std::uint64_t seed) const {
  std::vector<CurationItem> items = impl_->Items();
  return SampleReviewBatch(items, per_ptm, seed);
}
void CurationStore::Snapshot() { impl_->Snapshot(); }
std::size_t CurationStore::event_count() const { return impl_->event_count(); }
std::size_t CurationStore::discarded_bytes() const { return impl_->discarded(); }
const std::filesystem::path &CurationStore::dir() const { return impl_->dir(); }

PrecisionReport ReportFromLog(const std::filesystem::path &log_path) {
  std::ifstream in(log_path, std::ios::binary);
  if (!in) throw Error("cannot open " + log_path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string content = ss.str();
  // Same rule as replay: bytes after the last newline were never acknowledged.
  std::size_t good = content.rfind('\n');
  content.resize(good == std::string::npos ? 0 : good + 1);

  std::map<std::string, InteractionType> ptm_of;
  PrecisionReport report;
  std::istringstream lines(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      json ev = json::parse(line);
      std::string kind = RequireString(ev, "event");
      if (kind == "load") {
        CurationItem item = ItemFromJson(ev["item"]);
        ptm_of[item.id] = item.triplet.ptm;
      } else if (kind == "verdict") {
        Verdict v = VerdictFromJson(ev);
        auto it = ptm_of.find(v.item_id);
        if (it == ptm_of.end()) throw ValidationError("verdict for unknown item " + v.item_id);
        report.Add(it->second, v);
      }
    } catch (const json::exception &e) {
      throw ParseError(log_path.string(), line_no, e.what());
    } catch (const Error &e) {
      throw ParseError(log_path.string(), line_no, e.what());
    }
  }
  return report;
}

}  // namespace ptmx
