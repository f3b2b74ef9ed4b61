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

#include <gtest/gtest.h>

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "ptmx/curation.h"
#include "ptmx/curation_server.h"
#include "ptmx/errors.h"
#include "test_support.h"

namespace ptmx {
namespace {

using nlohmann::json;

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    StoreOptions so;
    so.sync = false;
    store_ = CurationStore::Open(dir_.path(), so);
    rows_ = test::ExpandOutcomeTable(test::FixturePath("curation/sampled_review.tsv"));
    std::vector<CurationItem> items;
    for (const auto &r : rows_) items.push_back(r.item);
    store_->LoadItems(items);
    ServerOptions opts;
    opts.port = 0;
    opts.threads = 4;
    test::WriteFile(dir_ / "ui/index.html", "<html>review</html>");
    opts.static_dir = (dir_ / "ui").string();
    server_ = std::make_unique<CurationServer>(*store_, opts);
    port_ = server_->Start();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void TearDown() override { server_->Stop(); }

  json PostJson(const std::string &path, const json &body, int want) {
    auto res = client_->Post(path, body.dump(), "application/json");
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, want) << path << " " << res->body;
    return json::parse(res->body);
  }

  json GetJson(const std::string &path, int want) {
    auto res = client_->Get(path);
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, want) << path << " " << res->body;
    return json::parse(res->body);
  }

  test::TempDir dir_;
  std::unique_ptr<CurationStore> store_;
  std::vector<test::ReviewedRow> rows_;
  std::unique_ptr<CurationServer> server_;
  std::unique_ptr<httplib::Client> client_;
  int port_ = 0;
};

json VerdictBody(const Verdict &v) {
  json body = {{"decision", DecisionName(v.decision)}, {"reviewer", v.reviewer}};
  if (v.category) body["category"] = CategoryName(*v.category);
  return body;
}

TEST_F(ServerTest, ReviewEverythingOverHttp) {
  for (const auto &r : rows_) {
    json item = PostJson("/items/" + r.item.id + "/verdict", VerdictBody(r.verdict), 200);
    EXPECT_EQ(item["status"], "reviewed");
    EXPECT_EQ(item["verdict"]["decision"], DecisionName(r.verdict.decision));
    if (r.verdict.category) {
      EXPECT_EQ(item["verdict"]["category"], CategoryName(*r.verdict.category));
    }
  }
  json report = GetJson("/report", 200);
  EXPECT_EQ(report["overall"]["correct"], 28);
  EXPECT_EQ(report["overall"]["total"], 83);
  EXPECT_DOUBLE_EQ(report["overall"]["inclusive_precision"].get<double>(), 28.0 / 83);
  EXPECT_EQ(report["per_ptm"]["ubiquitination"]["categories"]["no-trigger-word"], 4);
}

TEST_F(ServerTest, ItemsListingAndLookup) {
  json all = GetJson("/items", 200);
  EXPECT_EQ(all["items"].size(), rows_.size());
  json meth = GetJson("/items?ptm=methylation&status=pending&limit=5", 200);
  EXPECT_EQ(meth["items"].size(), 5u);
  for (const auto &it : meth["items"]) EXPECT_EQ(it["ptm"], "methylation");
  json one = GetJson("/items/" + rows_[0].item.id, 200);
  EXPECT_EQ(one["id"], rows_[0].item.id);
  EXPECT_TRUE(one["verdict"].is_null());
  GetJson("/items?ptm=glycation", 400);
  GetJson("/items?limit=-1", 400);
  GetJson("/items/nope", 404);
}

TEST_F(ServerTest, ErrorStatuses) {
  const std::string id = rows_[0].item.id;
  PostJson("/items/" + id + "/verdict", {{"decision", "maybe"}}, 400);
  PostJson("/items/" + id + "/verdict", {{"decision", "incorrect"}}, 400);
  PostJson("/items/" + id + "/verdict", {{"decision", "correct"}, {"category", "ner"}}, 400);
  PostJson("/items/unknown/verdict", {{"decision", "correct"}}, 404);
  PostJson("/items/" + id + "/verdict", {{"decision", "correct"}}, 200);
  PostJson("/items/" + id + "/verdict", {{"decision", "correct"}}, 200);
  json err = PostJson("/items/" + id + "/verdict", {{"decision", "unsure"}}, 409);
  EXPECT_TRUE(err.contains("error"));
  auto res = client_->Post("/batches", "not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
}

TEST_F(ServerTest, BatchesAndMeta) {
  json batch = PostJson("/batches", {{"per_ptm", 2}, {"seed", 5}}, 200);
  EXPECT_EQ(batch["items"].size(), 9u);  // acetylation has a single item
  json again = PostJson("/batches", {{"per_ptm", 2}, {"seed", 5}}, 200);
  EXPECT_EQ(batch, again);
  PostJson("/batches", {{"per_ptm", 0}}, 400);
  json meta = GetJson("/meta", 200);
  EXPECT_EQ(meta["decisions"], json({"correct", "incorrect", "unsure"}));
  EXPECT_EQ(meta["categories"].size(), kNumCategories);
  EXPECT_EQ(meta["ptms"].size(), kNumPositiveClasses);
}

TEST_F(ServerTest, ServesStaticBundle) {
  auto res = client_->Get("/index.html");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "<html>review</html>");
}

TEST(ServerStart, MissingStaticDirIsRejected) {
  test::TempDir dir;
  auto store = CurationStore::Open(dir.path());
  ServerOptions opts;
  opts.port = 0;
  opts.static_dir = (dir / "missing").string();
  EXPECT_THROW(CurationServer(*store, opts), ValidationError);
}

}  // namespace
}  // namespace ptmx
