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

#include "stub_server.h"

#include <poll.h>
#include <unistd.h>

#include <cerrno>
#include <fstream>
#include <vector>

#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "json.hpp"
#include "perturbkit/external_perturber.h"
#include "perturbkit/perturber.h"

namespace perturbkit {
namespace {

using json = nlohmann::json;

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

// The reply line for a request, or nullopt to stay silent.
std::optional<std::string> ReplyLine(uint64_t id, StubFault fault,
                                     const std::string& output) {
  switch (fault) {
    case StubFault::kGarbage:
      return json{{"id", id}, {"error", "garbage"}}.dump();
    case StubFault::kCorrupt:
      return std::string("}} not json {{");
    case StubFault::kSlow:
    case StubFault::kDie:
      return std::nullopt;
    case StubFault::kNone:
      break;
  }
  return json{{"id", id}, {"output", output}}.dump();
}

}  // namespace

absl::StatusOr<std::unique_ptr<StubResponder>> StubResponder::Create(
    StubOptions options) {
  std::unique_ptr<StubResponder> stub(new StubResponder(std::move(options)));
  const StubOptions& opts = stub->options_;
  if (opts.reorder == 0) {
    return absl::InvalidArgumentError("reorder batch must be at least 1");
  }
  if (opts.mode == StubMode::kCanned) {
    std::ifstream in(opts.canned_path);
    if (!in) {
      return absl::NotFoundError(absl::StrCat("cannot open ", opts.canned_path));
    }
    std::string line;
    for (size_t number = 1; std::getline(in, line); ++number) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json row = json::parse(line, nullptr, /*allow_exceptions=*/false);
      if (row.is_discarded() || !row.is_object() || !row.contains("input") ||
          !row.contains("output") || !row["input"].is_string() ||
          !row["output"].is_string()) {
        return absl::InvalidArgumentError(absl::StrCat(
            opts.canned_path, ":", number, ": expected {input, output}"));
      }
      stub->canned_[row["input"].get<std::string>()] =
          row["output"].get<std::string>();
    }
  } else if (opts.mode == StubMode::kHeuristic) {
    absl::StatusOr<Resources> resources = LoadResources(
        opts.data_dir.empty() ? DefaultDataDir() : opts.data_dir);
    if (!resources.ok()) return resources.status();
    stub->resources_ = *std::move(resources);
    stub->engine_ = std::make_unique<HeuristicPerturber>(
        &stub->resources_->lexicon, &stub->resources_->names,
        HeuristicMode::kGuarded);
  }
  return stub;
}

std::string StubResponder::Respond(std::string_view input) const {
  if (options_.mode == StubMode::kCanned) {
    if (auto it = canned_.find(std::string(input)); it != canned_.end()) {
      return it->second;
    }
  }
  absl::StatusOr<ExternalInput> decoded = DecodeExternalInput(input);
  if (!decoded.ok()) return std::string(input);
  if (options_.mode == StubMode::kHeuristic) {
    absl::StatusOr<PerturbRequest> request = BuildRequest(
        resources_->lexicon, decoded->text, decoded->word, decoded->target);
    if (request.ok()) {
      absl::StatusOr<PerturbResult> result = engine_->Perturb(*request);
      if (result.ok()) return result->text;
    }
  }
  return decoded->text;
}

StubFault StubResponder::FaultFor(std::string_view input) {
  auto has = [&](std::string_view marker) {
    return input.find(marker) != std::string_view::npos;
  };
  if (has("__die__")) return StubFault::kDie;
  if (has("__slow__")) return StubFault::kSlow;
  if (has("__corrupt__")) return StubFault::kCorrupt;
  if (has("__garbage__")) return StubFault::kGarbage;
  if (has("__flaky__")) {
    std::lock_guard<std::mutex> lock(mu_);
    if (flaky_seen_.insert(std::string(input)).second) {
      return StubFault::kGarbage;
    }
  }
  return StubFault::kNone;
}

int RunStdioStub(StubResponder& responder, int in_fd, int out_fd) {
  const StubOptions& options = responder.options();
  std::string buffer;
  std::vector<std::string> batch;

  auto flush = [&]() -> bool {
    for (auto it = batch.rbegin(); it != batch.rend(); ++it) {
      if (options.delay.count() > 0) std::this_thread::sleep_for(options.delay);
      if (!WriteAll(out_fd, *it)) return false;
    }
    batch.clear();
    return true;
  };

  char chunk[1 << 16];
  while (true) {
    pollfd pfd{in_fd, POLLIN, 0};
    const int timeout =
        batch.empty() ? -1 : static_cast<int>(options.batch_idle.count());
    const int ready = ::poll(&pfd, 1, timeout);
    if (ready < 0) {
      if (errno == EINTR) continue;
      return 1;
    }
    if (ready == 0) {
      if (!flush()) return 1;
      continue;
    }
    const ssize_t n = ::read(in_fd, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      return 1;
    }
    if (n == 0) return flush() ? 0 : 1;
    buffer.append(chunk, static_cast<size_t>(n));

    size_t newline;
    while ((newline = buffer.find('\n')) != std::string::npos) {
      const std::string line = buffer.substr(0, newline);
      buffer.erase(0, newline + 1);
      json request = json::parse(line, nullptr, /*allow_exceptions=*/false);
      if (request.is_discarded() || !request.is_object() ||
          !request.contains("id") || !request["id"].is_number_unsigned() ||
          !request.contains("input") || !request["input"].is_string()) {
        continue;
      }
      const uint64_t id = request["id"].get<uint64_t>();
      const std::string input = request["input"].get<std::string>();
      const StubFault fault = responder.FaultFor(input);
      if (fault == StubFault::kDie) {
        flush();
        return 0;
      }
      std::optional<std::string> reply = ReplyLine(
          id, fault,
          fault == StubFault::kNone ? responder.Respond(input) : std::string());
      if (!reply.has_value()) continue;
      batch.push_back(*reply + "\n");
      if (batch.size() >= options.reorder && !flush()) return 1;
    }
  }
}

StubHttpServer::StubHttpServer(StubResponder* responder)
    : responder_(responder), server_(std::make_unique<httplib::Server>()) {}

StubHttpServer::~StubHttpServer() { Stop(); }

absl::StatusOr<int> StubHttpServer::Start(const std::string& host, int port) {
  server_->Post("/perturb", [this](const httplib::Request& req,
                                   httplib::Response& res) {
    const StubOptions& options = responder_->options();
    json request = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
    if (request.is_discarded() || !request.is_object() ||
        !request.contains("id") || !request["id"].is_number_unsigned() ||
        !request.contains("input") || !request["input"].is_string()) {
      res.status = 400;
      res.set_content(R"({"error":"bad request"})", "application/json");
      return;
    }
    const uint64_t id = request["id"].get<uint64_t>();
    const std::string input = request["input"].get<std::string>();
    StubFault fault = responder_->FaultFor(input);
    if (options.delay.count() > 0) std::this_thread::sleep_for(options.delay);
    if (fault == StubFault::kSlow || fault == StubFault::kDie) {
      std::this_thread::sleep_for(options.slow_delay);
      fault = StubFault::kNone;
    }
    std::optional<std::string> reply = ReplyLine(
        id, fault,
        fault == StubFault::kNone ? responder_->Respond(input) : std::string());
    res.set_content(reply.value_or(""), "application/json");
  });

  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) {
    return absl::UnavailableError(
        absl::StrCat("cannot bind ", host, ":", port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void StubHttpServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

void StubHttpServer::Wait() {
  if (thread_.joinable()) thread_.join();
}

}  // namespace perturbkit
