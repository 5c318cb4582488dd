//
// Copyright 2026 The PerturbKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "perturbkit/external_perturber.h"

#include <errno.h>
#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <future>
#include <map>
#include <mutex>
#include <thread>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "httplib.h"
#include "json.hpp"
#include "perturbkit/errors.h"
#include "perturbkit/string_util.h"

extern char** environ;

namespace perturbkit {
namespace {

using json = nlohmann::json;
using Reply = absl::StatusOr<std::string>;

std::string RequestBody(uint64_t id, const std::string& input) {
  return json{{"id", id}, {"input", input}}.dump();
}

void IgnoreSigpipe() {
  static std::once_flag once;
  std::call_once(once, [] {
    struct sigaction action = {};
    action.sa_handler = SIG_IGN;
    sigaction(SIGPIPE, &action, nullptr);
  });
}

bool WriteAll(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<size_t>(n));
  }
  return true;
}

// Child process speaking line-delimited JSON on its standard streams.
class StdioTransport : public ExternalTransport {
 public:
  explicit StdioTransport(std::vector<std::string> command)
      : command_(std::move(command)) {}

  ~StdioTransport() override {
    std::lock_guard<std::mutex> lock(spawn_mu_);
    Shutdown();
  }

  absl::Status Start() {
    std::lock_guard<std::mutex> lock(spawn_mu_);
    return Spawn();
  }

  Reply Call(uint64_t id, const std::string& input,
             std::chrono::milliseconds timeout) override {
    std::future<Reply> reply;
    {
      std::lock_guard<std::mutex> lock(spawn_mu_);
      if (!alive_.load()) {
        // Restart an engine that exited; pending callers already failed.
        Shutdown();
        if (absl::Status s = Spawn(); !s.ok()) return s;
      }
      std::promise<Reply> promise;
      reply = promise.get_future();
      {
        std::lock_guard<std::mutex> pending_lock(pending_mu_);
        pending_.emplace(id, std::move(promise));
      }
      const std::string line = RequestBody(id, input) + "\n";
      if (!WriteAll(to_child_, line)) {
        Fail(id, ConnectionRefusedError("engine process closed its input"));
      }
    }
    if (reply.wait_for(timeout) == std::future_status::ready) {
      return reply.get();
    }
    {
      std::lock_guard<std::mutex> pending_lock(pending_mu_);
      if (pending_.erase(id) == 0) {
        // Resolved between the wait and the lock.
        return reply.get();
      }
    }
    return TimeoutError(absl::StrCat("no reply for request ", id, " within ",
                                     timeout.count(), " ms"));
  }

  uint64_t late_replies() const override { return late_.load(); }

 private:
  absl::Status Spawn() {
    IgnoreSigpipe();
    if (command_.empty()) {
      return ConnectionRefusedError("no engine command configured");
    }
    int in_pipe[2];
    int out_pipe[2];
    if (pipe2(in_pipe, O_CLOEXEC) != 0) {
      return ConnectionRefusedError("pipe() failed");
    }
    if (pipe2(out_pipe, O_CLOEXEC) != 0) {
      ::close(in_pipe[0]);
      ::close(in_pipe[1]);
      return ConnectionRefusedError("pipe() failed");
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
    std::vector<char*> argv;
    for (std::string& arg : command_) argv.push_back(arg.data());
    argv.push_back(nullptr);
    const int rc = posix_spawnp(&pid_, argv[0], &actions, nullptr, argv.data(),
                                environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    if (rc != 0) {
      ::close(in_pipe[1]);
      ::close(out_pipe[0]);
      pid_ = -1;
      return ConnectionRefusedError(absl::StrCat(
          "cannot start engine '", command_[0], "': ", strerror(rc)));
    }
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    alive_.store(true);
    reader_ = std::thread([this, fd = from_child_] { ReadLoop(fd); });
    return absl::OkStatus();
  }

  // Requires spawn_mu_.
  void Shutdown() {
    if (to_child_ >= 0) {
      ::close(to_child_);
      to_child_ = -1;
    }
    if (pid_ > 0) {
      int status = 0;
      bool exited = false;
      for (int i = 0; i < 200 && !exited; ++i) {
        exited = waitpid(pid_, &status, WNOHANG) == pid_;
        if (!exited) std::this_thread::sleep_for(std::chrono::milliseconds(5));
      }
      if (!exited) {
        kill(pid_, SIGKILL);
        waitpid(pid_, &status, 0);
      }
      pid_ = -1;
    }
    if (reader_.joinable()) reader_.join();
    if (from_child_ >= 0) {
      ::close(from_child_);
      from_child_ = -1;
    }
    alive_.store(false);
  }

  void ReadLoop(int fd) {
    std::string buffer;
    char chunk[1 << 16];
    while (true) {
      const ssize_t n = ::read(fd, chunk, sizeof(chunk));
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) break;
      buffer.append(chunk, static_cast<size_t>(n));
      size_t start = 0;
      for (size_t nl = buffer.find('\n', start); nl != std::string::npos;
           nl = buffer.find('\n', start)) {
        HandleLine(std::string_view(buffer).substr(start, nl - start));
        start = nl + 1;
      }
      buffer.erase(0, start);
    }
    alive_.store(false);
    if (!buffer.empty()) {
      FailAll(MalformedResponseError("engine exited mid-reply"));
    }
    FailAll(ConnectionRefusedError("engine process exited"));
  }

  void HandleLine(std::string_view line) {
    if (line.empty() || line == "\r") return;
    json reply = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (reply.is_discarded() || !reply.is_object() || !reply.contains("id") ||
        !reply["id"].is_number_unsigned()) {
      // The reply cannot be attributed; every waiting caller is suspect.
      FailAll(MalformedResponseError(absl::StrCat(
          "unparseable engine reply: ", Sv(line.substr(0, 80)))));
      return;
    }
    const uint64_t id = reply["id"].get<uint64_t>();
    if (!reply.contains("output") || !reply["output"].is_string()) {
      if (!Fail(id, MalformedResponseError(absl::StrCat(
                        "reply ", id, " has no string output")))) {
        late_.fetch_add(1);
      }
      return;
    }
    std::promise<Reply> promise;
    {
      std::lock_guard<std::mutex> lock(pending_mu_);
      auto it = pending_.find(id);
      if (it == pending_.end()) {
        late_.fetch_add(1);
        return;
      }
      promise = std::move(it->second);
      pending_.erase(it);
    }
    promise.set_value(reply["output"].get<std::string>());
  }

  bool Fail(uint64_t id, absl::Status status) {
    std::promise<Reply> promise;
    {
      std::lock_guard<std::mutex> lock(pending_mu_);
      auto it = pending_.find(id);
      if (it == pending_.end()) return false;
      promise = std::move(it->second);
      pending_.erase(it);
    }
    promise.set_value(std::move(status));
    return true;
  }

  void FailAll(const absl::Status& status) {
    std::map<uint64_t, std::promise<Reply>> pending;
    {
      std::lock_guard<std::mutex> lock(pending_mu_);
      pending.swap(pending_);
    }
    for (auto& [id, promise] : pending) promise.set_value(status);
  }

  std::vector<std::string> command_;
  std::mutex spawn_mu_;  // guards process state and writes to the child
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::thread reader_;
  std::atomic<bool> alive_{false};

  std::mutex pending_mu_;
  std::map<uint64_t, std::promise<Reply>> pending_;
  std::atomic<uint64_t> late_{0};
};

class HttpTransport : public ExternalTransport {
 public:
  HttpTransport(std::string host, int port, std::string path)
      : host_(std::move(host)), port_(port), path_(std::move(path)) {}

  Reply Call(uint64_t id, const std::string& input,
             std::chrono::milliseconds timeout) override {
    std::unique_ptr<httplib::Client> client = Acquire();
    const auto seconds = timeout.count() / 1000;
    const auto micros = (timeout.count() % 1000) * 1000;
    client->set_connection_timeout(seconds, micros);
    client->set_read_timeout(seconds, micros);
    client->set_write_timeout(seconds, micros);

    const auto start = std::chrono::steady_clock::now();
    httplib::Result result =
        client->Post(path_, RequestBody(id, input), "application/json");
    if (!result) {
      const httplib::Error error = result.error();
      const auto elapsed = std::chrono::steady_clock::now() - start;
      if (error == httplib::Error::ConnectionTimeout ||
          (error == httplib::Error::Read && elapsed >= timeout * 9 / 10)) {
        return TimeoutError(absl::StrCat("no reply for request ", id,
                                         " within ", timeout.count(), " ms"));
      }
      if (error == httplib::Error::Connection) {
        return ConnectionRefusedError(
            absl::StrCat("cannot connect to ", host_, ":", port_));
      }
      return MalformedResponseError(
          absl::StrCat("transport error: ", httplib::to_string(error)));
    }
    if (result->status != 200) {
      return MalformedResponseError(
          absl::StrCat("engine answered HTTP ", result->status));
    }
    json reply = json::parse(result->body, nullptr, false);
    if (reply.is_discarded() || !reply.is_object() ||
        !reply.contains("output") || !reply["output"].is_string()) {
      return MalformedResponseError(absl::StrCat(
          "unparseable engine reply: ", result->body.substr(0, 80)));
    }
    if (!reply.contains("id") || !reply["id"].is_number_unsigned() ||
        reply["id"].get<uint64_t>() != id) {
      return MalformedResponseError(
          absl::StrCat("reply id does not match request ", id));
    }
    Release(std::move(client));
    return reply["output"].get<std::string>();
  }

 private:
  std::unique_ptr<httplib::Client> Acquire() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (!idle_.empty()) {
        auto client = std::move(idle_.back());
        idle_.pop_back();
        return client;
      }
    }
    auto client = std::make_unique<httplib::Client>(host_, port_);
    client->set_keep_alive(true);
    return client;
  }

  void Release(std::unique_ptr<httplib::Client> client) {
    std::lock_guard<std::mutex> lock(mu_);
    idle_.push_back(std::move(client));
  }

  std::string host_;
  int port_;
  std::string path_;
  std::mutex mu_;
  std::vector<std::unique_ptr<httplib::Client>> idle_;
};

}  // namespace

absl::Status ParseEndpoint(std::string_view spec, ExternalConfig* config) {
  constexpr std::string_view kStdio = "stdio:";
  constexpr std::string_view kHttp = "http://";
  if (spec.substr(0, kStdio.size()) == kStdio) {
    config->transport = TransportKind::kStdio;
    config->command.clear();
    for (absl::string_view arg :
         absl::StrSplit(Sv(spec.substr(kStdio.size())), ' ',
                        absl::SkipWhitespace())) {
      config->command.emplace_back(arg);
    }
    if (config->command.empty()) {
      return absl::InvalidArgumentError("stdio endpoint has no command");
    }
    return absl::OkStatus();
  }
  if (spec.substr(0, kHttp.size()) == kHttp) {
    std::string_view rest = spec.substr(kHttp.size());
    std::string path = "/perturb";
    if (const size_t slash = rest.find('/'); slash != std::string_view::npos) {
      path = std::string(rest.substr(slash));
      rest = rest.substr(0, slash);
    }
    const size_t colon = rest.rfind(':');
    int port = 80;
    if (colon == std::string_view::npos ||
        !absl::SimpleAtoi(Sv(rest.substr(colon + 1)), &port) || port <= 0 ||
        port > 65535) {
      return absl::InvalidArgumentError(absl::StrCat(
          "http endpoint '", Sv(spec), "' needs host:port"));
    }
    config->transport = TransportKind::kHttp;
    config->host = std::string(rest.substr(0, colon));
    config->port = port;
    config->path = path;
    return absl::OkStatus();
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "endpoint '", Sv(spec), "' must start with stdio: or http://"));
}

std::string EncodeExternalInput(const PerturbRequest& request,
                                AttrFormat format) {
  return absl::StrCat(request.word.surface, " ",
                      AttributeToken(request.target, format), " ",
                      Sv(kPertSepToken), " ", request.text);
}

absl::StatusOr<ExternalInput> DecodeExternalInput(std::string_view input) {
  const std::string separator = absl::StrCat(" ", Sv(kPertSepToken), " ");
  const size_t at = input.find(separator);
  if (at == std::string_view::npos) {
    return absl::InvalidArgumentError("input has no <PERT_SEP> separator");
  }
  const std::string_view prefix = input.substr(0, at);
  const size_t space = prefix.rfind(' ');
  if (space == std::string_view::npos || space == 0) {
    return absl::InvalidArgumentError("input prefix needs a word and a target");
  }
  std::optional<Attribute> target =
      ParseAttributeToken(prefix.substr(space + 1));
  if (!target) {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown target attribute '", Sv(prefix.substr(space + 1)), "'"));
  }
  return ExternalInput{std::string(prefix.substr(0, space)), *target,
                       std::string(input.substr(at + separator.size()))};
}

absl::StatusOr<std::unique_ptr<ExternalTransport>> MakeStdioTransport(
    std::vector<std::string> command) {
  auto transport = std::make_unique<StdioTransport>(std::move(command));
  if (absl::Status s = transport->Start(); !s.ok()) return s;
  return std::unique_ptr<ExternalTransport>(std::move(transport));
}

std::unique_ptr<ExternalTransport> MakeHttpTransport(std::string host, int port,
                                                     std::string path) {
  return std::make_unique<HttpTransport>(std::move(host), port,
                                         std::move(path));
}

absl::StatusOr<std::unique_ptr<ExternalPerturber>> ExternalPerturber::Create(
    ExternalConfig config) {
  if (config.max_in_flight < 1 || config.max_retries < 0 ||
      config.timeout.count() <= 0) {
    return absl::InvalidArgumentError(
        "external engine needs max_in_flight >= 1, max_retries >= 0 and a "
        "positive timeout");
  }
  std::unique_ptr<ExternalTransport> transport;
  if (config.transport == TransportKind::kStdio) {
    auto stdio = MakeStdioTransport(config.command);
    if (!stdio.ok()) return stdio.status();
    transport = *std::move(stdio);
  } else {
    transport = MakeHttpTransport(config.host, config.port, config.path);
  }
  return std::make_unique<ExternalPerturber>(std::move(config),
                                             std::move(transport));
}

ExternalPerturber::ExternalPerturber(ExternalConfig config,
                                     std::unique_ptr<ExternalTransport> transport)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      slots_(std::max(config_.max_in_flight, 1)) {}

absl::StatusOr<std::string> ExternalPerturber::Complete(
    const std::string& input) const {
  slots_.acquire();
  absl::Status last;
  auto delay = config_.backoff;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    attempts_.fetch_add(1);
    absl::StatusOr<std::string> reply =
        transport_->Call(next_id_.fetch_add(1), input, config_.timeout);
    if (reply.ok()) {
      slots_.release();
      return reply;
    }
    last = reply.status();
    if (!EngineErrorKindOf(last)) break;
  }
  slots_.release();
  return last;
}

absl::StatusOr<PerturbResult> ExternalPerturber::Perturb(
    const PerturbRequest& request) const {
  if (absl::Status s = request.Validate(); !s.ok()) return s;
  absl::StatusOr<std::string> output =
      Complete(EncodeExternalInput(request, config_.attr_format));
  if (!output.ok()) return output.status();
  PerturbResult result;
  result.engine = EngineKind::kExternal;
  result.edits = DiffEdits(request.text, *output);
  result.text = *std::move(output);
  return result;
}

}  // namespace perturbkit
