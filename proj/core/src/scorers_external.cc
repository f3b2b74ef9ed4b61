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

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "ptmx/errors.h"
#include "ptmx/scoring.h"

extern char **environ;

namespace ptmx {
namespace {

std::string ErrnoMessage(const char *what) {
  return std::string(what) + ": " + std::strerror(errno);
}

// A child process with pipes to its stdin and stdout.
class ChildProcess {
 public:
  explicit ChildProcess(const std::string &command) {
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0) throw ProtocolError(ErrnoMessage("pipe"));
    if (pipe(out_pipe) != 0) {
      close(in_pipe[0]);
      close(in_pipe[1]);
      throw ProtocolError(ErrnoMessage("pipe"));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
    posix_spawn_file_actions_addclose(&actions, in_pipe[1]);
    posix_spawn_file_actions_addclose(&actions, out_pipe[0]);
    const char *argv[] = {"/bin/sh", "-c", command.c_str(), nullptr};
    int rc = posix_spawn(&pid_, "/bin/sh", &actions, nullptr,
                         const_cast<char *const *>(argv), environ);
    posix_spawn_file_actions_destroy(&actions);
    close(in_pipe[0]);
    close(out_pipe[1]);
    if (rc != 0) {
      close(in_pipe[1]);
      close(out_pipe[0]);
      errno = rc;
      throw ProtocolError(ErrnoMessage("spawn scorer"));
    }
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    fcntl(to_child_, F_SETFD, FD_CLOEXEC);
    fcntl(from_child_, F_SETFD, FD_CLOEXEC);
    fcntl(to_child_, F_SETFL, fcntl(to_child_, F_GETFL) | O_NONBLOCK);
  }

  ~ChildProcess() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    // Give the child a moment to exit on EOF, then kill it.
    for (int i = 0; i < 50; ++i) {
      if (waitpid(pid_, nullptr, WNOHANG) != 0) return;
      usleep(10000);
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
  }

  ChildProcess(const ChildProcess &) = delete;
  ChildProcess &operator=(const ChildProcess &) = delete;

  // Writes `input` while collecting `expected` complete output lines.
  // Interleaves reads and writes so a large batch cannot deadlock on full
  // pipe buffers.
  std::vector<std::string> Exchange(const std::string &input, std::size_t expected,
                                    std::chrono::milliseconds timeout) {
    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now() + timeout;
    std::vector<std::string> lines;
    std::size_t written = 0;
    char buf[65536];
    while (lines.size() < expected) {
      // Drain complete lines already buffered.
      std::size_t nl;
      while (lines.size() < expected && (nl = pending_.find('\n')) != std::string::npos) {
        lines.push_back(pending_.substr(0, nl));
        pending_.erase(0, nl + 1);
      }
      if (lines.size() >= expected) break;

      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now());
      if (left.count() <= 0) throw ProtocolError("scorer timed out");
      pollfd fds[2];
      nfds_t n = 0;
      fds[n++] = {from_child_, POLLIN, 0};
      if (written < input.size()) fds[n++] = {to_child_, POLLOUT, 0};
      int rc = poll(fds, n, static_cast<int>(left.count()));
      if (rc < 0) {
        if (errno == EINTR) continue;
        throw ProtocolError(ErrnoMessage("poll"));
      }
      if (rc == 0) throw ProtocolError("scorer timed out");
      if (n == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
        ssize_t w = write(to_child_, input.data() + written, input.size() - written);
        if (w < 0 && errno != EAGAIN && errno != EINTR) {
          throw ProtocolError(ErrnoMessage("write to scorer"));
        }
        if (w > 0) written += static_cast<std::size_t>(w);
      }
      if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
        ssize_t r = read(from_child_, buf, sizeof(buf));
        if (r < 0 && errno != EINTR && errno != EAGAIN) {
          throw ProtocolError(ErrnoMessage("read from scorer"));
        }
        if (r == 0) throw ProtocolError("scorer process closed its output");
        if (r > 0) pending_.append(buf, static_cast<std::size_t>(r));
      }
    }
    if (written < input.size()) throw ProtocolError("scorer answered before reading its input");
    return lines;
  }

 private:
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string pending_;
};

void IgnoreSigpipeOnce() {
  static std::once_flag once;
  std::call_once(once, [] { signal(SIGPIPE, SIG_IGN); });
}

}  // namespace

class CommandScorer::Impl {
 public:
  Impl(std::string command, ExternalOptions options)
      : command_(std::move(command)), options_(options) {}

  std::vector<ScoreResponse> ScoreBatch(std::span<const ScoreRequest> batch) {
    std::lock_guard<std::mutex> lock(mu_);
    if (batch.empty()) return {};
    if (!child_) child_ = std::make_unique<ChildProcess>(command_);
    std::string payload;
    for (const ScoreRequest &r : batch) {
      payload += EncodeRequest(r);
      payload += '\n';
    }
    try {
      std::vector<std::string> lines = child_->Exchange(payload, batch.size(), options_.timeout);
      std::vector<ScoreResponse> responses;
      responses.reserve(lines.size());
      for (const std::string &line : lines) responses.push_back(DecodeResponse(line));
      return MatchResponses(batch, std::move(responses));
    } catch (const ProtocolError &) {
      // The stream may be out of step now; start over with a fresh process.
      child_.reset();
      throw;
    }
  }

 private:
  std::string command_;
  ExternalOptions options_;
  std::mutex mu_;
  std::unique_ptr<ChildProcess> child_;
};

CommandScorer::CommandScorer(int identity, std::string command, ExternalOptions options)
    : Scorer(identity), impl_(std::make_unique<Impl>(std::move(command), options)) {
  IgnoreSigpipeOnce();
}

CommandScorer::~CommandScorer() = default;

std::vector<ScoreResponse> CommandScorer::ScoreBatch(std::span<const ScoreRequest> batch) {
  return impl_->ScoreBatch(batch);
}

HttpScorer::HttpScorer(int identity, std::string base_url, ExternalOptions options)
    : Scorer(identity), base_url_(std::move(base_url)), options_(options) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
  IgnoreSigpipeOnce();
}

HttpScorer::~HttpScorer() = default;

std::vector<ScoreResponse> HttpScorer::ScoreBatch(std::span<const ScoreRequest> batch) {
  if (batch.empty()) return {};
  // Split "scheme://host:port" from an optional path prefix.
  std::string host = base_url_, prefix;
  std::size_t scheme = host.find("://");
  std::size_t slash = host.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (slash != std::string::npos) {
    prefix = host.substr(slash);
    host.resize(slash);
  }
  httplib::Client client(host);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  std::string body = "[";
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (i) body += ',';
    body += EncodeRequest(batch[i]);
  }
  body += ']';
  auto res = client.Post(prefix + "/score", body, "application/json");
  if (!res) {
    throw ProtocolError("POST " + base_url_ + "/score failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProtocolError("POST " + base_url_ + "/score returned HTTP " + std::to_string(res->status));
  }
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error &e) {
    throw ProtocolError(std::string("malformed JSON from scorer: ") + e.what());
  }
  if (!arr.is_array()) throw ProtocolError("scorer reply must be a JSON array");
  std::vector<ScoreResponse> responses;
  responses.reserve(arr.size());
  for (const auto &item : arr) responses.push_back(DecodeResponse(item.dump()));
  return MatchResponses(batch, std::move(responses));
}

}  // namespace ptmx
