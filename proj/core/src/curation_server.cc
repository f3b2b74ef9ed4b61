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

#include "ptmx/curation_server.h"

#include <charconv>
#include <thread>

#include <httplib.h>

#include "ptmx/errors.h"
#include "ptmx/provenance.h"

namespace ptmx {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void Reply(httplib::Response &res, int status, const ordered_json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response &res, int status, const std::string &message) {
  Reply(res, status, ordered_json{{"error", message}});
}

std::size_t ParseLimit(const std::string &s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("limit must be a non-negative integer");
  }
  return v;
}

json ParseBody(const httplib::Request &req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw ValidationError("request body must be a JSON object");
  }
  return body;
}

ordered_json ItemList(const std::vector<CurationItem> &items) {
  ordered_json arr = ordered_json::array();
  for (const CurationItem &item : items) arr.push_back(ItemToJson(item));
  return ordered_json{{"items", arr}};
}

}  // namespace

class CurationServer::Impl {
 public:
  Impl(CurationStore &store, ServerOptions options)
      : store_(store), options_(std::move(options)) {
    const unsigned threads = options_.threads ? options_.threads : 1;
    server_.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    Routes();
  }

  ~Impl() { Stop(); }

  int Start() {
    int port = options_.port == 0 ? server_.bind_to_any_port(options_.host)
                                  : (server_.bind_to_port(options_.host, options_.port)
                                         ? options_.port
                                         : -1);
    if (port < 0) {
      throw Error("cannot bind " + options_.host + ":" + std::to_string(options_.port));
    }
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return port;
  }

  void Wait() {
    if (thread_.joinable()) thread_.join();
  }

  void Stop() {
    server_.stop();
    Wait();
  }

 private:
  // Maps library errors onto status codes.
  template <typename Fn>
  auto Guard(Fn fn) {
    return [fn](const httplib::Request &req, httplib::Response &res) {
      try {
        fn(req, res);
      } catch (const NotFoundError &e) {
        ReplyError(res, 404, e.what());
      } catch (const ConflictError &e) {
        ReplyError(res, 409, e.what());
      } catch (const ValidationError &e) {
        ReplyError(res, 400, e.what());
      } catch (const json::exception &e) {
        ReplyError(res, 400, e.what());
      } catch (const std::exception &e) {
        ReplyError(res, 500, e.what());
      }
    };
  }

  void Routes() {
    server_.Get("/items", Guard([this](const httplib::Request &req, httplib::Response &res) {
      std::optional<ItemStatus> status;
      std::optional<InteractionType> ptm;
      std::size_t limit = 0;
      if (req.has_param("status") && !req.get_param_value("status").empty()) {
        const std::string s = req.get_param_value("status");
        status = ParseStatus(s);
        if (!status) throw ValidationError("unknown status '" + s + "'");
      }
      if (req.has_param("ptm") && !req.get_param_value("ptm").empty()) {
        const std::string s = req.get_param_value("ptm");
        ptm = ParsePositiveClassName(s);
        if (!ptm) throw ValidationError("unknown ptm '" + s + "'");
      }
      if (req.has_param("limit") && !req.get_param_value("limit").empty()) {
        limit = ParseLimit(req.get_param_value("limit"));
      }
      Reply(res, 200, ItemList(store_.List(status, ptm, limit)));
    }));

    server_.Get(R"(/items/([^/]+))",
                Guard([this](const httplib::Request &req, httplib::Response &res) {
                  Reply(res, 200, ItemToJson(store_.Get(req.matches[1])));
                }));

    server_.Post(R"(/items/([^/]+)/verdict)",
                 Guard([this](const httplib::Request &req, httplib::Response &res) {
                   json body = ParseBody(req);
                   body["item_id"] = std::string(req.matches[1]);
                   body.erase("timestamp");
                   Verdict v = VerdictFromJson(body);
                   Reply(res, 200, ItemToJson(store_.RecordVerdict(std::move(v))));
                 }));

    server_.Get("/report", Guard([this](const httplib::Request &, httplib::Response &res) {
      Reply(res, 200, PrecisionReportToJson(store_.Report()));
    }));

    server_.Post("/batches", Guard([this](const httplib::Request &req, httplib::Response &res) {
      json body = ParseBody(req);
      auto per = body.find("per_ptm");
      if (per == body.end() || !per->is_number_integer() || per->get<long long>() < 1) {
        throw ValidationError("per_ptm must be a positive integer");
      }
      std::uint64_t seed = 0;
      if (auto s = body.find("seed"); s != body.end()) {
        if (!s->is_number_unsigned()) throw ValidationError("seed must be a non-negative integer");
        seed = s->get<std::uint64_t>();
      }
      Reply(res, 200, ItemList(store_.SampleBatch(per->get<std::size_t>(), seed)));
    }));

    server_.Get("/meta", Guard([](const httplib::Request &, httplib::Response &res) {
      ordered_json meta;
      meta["version"] = Version();
      ordered_json decisions = ordered_json::array();
      for (Decision d : {Decision::kCorrect, Decision::kIncorrect, Decision::kUnsure}) {
        decisions.push_back(DecisionName(d));
      }
      meta["decisions"] = decisions;
      ordered_json categories = ordered_json::array();
      for (ErrorCategory c : kAllCategories) categories.push_back(CategoryName(c));
      meta["categories"] = categories;
      ordered_json ptms = ordered_json::array();
      for (InteractionType t : kPositiveClasses) ptms.push_back(ClassName(t));
      meta["ptms"] = ptms;
      Reply(res, 200, meta);
    }));

    if (!options_.static_dir.empty() && !server_.set_mount_point("/", options_.static_dir)) {
      throw ValidationError("static directory " + options_.static_dir + " does not exist");
    }
  }

  CurationStore &store_;
  ServerOptions options_;
  httplib::Server server_;
  std::thread thread_;
};

CurationServer::CurationServer(CurationStore &store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}
CurationServer::~CurationServer() = default;
int CurationServer::Start() { return impl_->Start(); }
void CurationServer::Wait() { impl_->Wait(); }
void CurationServer::Stop() { impl_->Stop(); }

}  // namespace ptmx
