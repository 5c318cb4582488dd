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

// A stand-in for an external perturbation engine, speaking the same stdio and
// HTTP protocols as ExternalPerturber expects. Used by the conformance tests
// and for trying the external engine path without a model.
//
// Faults are triggered by markers in the request text:
//
//   __garbage__  reply carries the id but no string output (malformed)
//   __corrupt__  reply line is not JSON at all
//   __slow__     stdio: never reply; http: reply after `slow_delay`
//   __flaky__    the first request with a given input gets a malformed reply,
//                later ones succeed
//   __die__      stdio: the process exits without replying

#ifndef PERTURBKIT_TOOLS_STUB_SERVER_H_
#define PERTURBKIT_TOOLS_STUB_SERVER_H_

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "absl/status/statusor.h"
#include "perturbkit/heuristic_perturber.h"
#include "perturbkit/resources.h"

namespace httplib {
class Server;
}

namespace perturbkit {

enum class StubMode { kEcho, kCanned, kHeuristic };

struct StubOptions {
  StubMode mode = StubMode::kEcho;
  std::string canned_path;  // jsonl of {"input": ..., "output": ...}
  std::string data_dir;     // heuristic mode; empty = DefaultDataDir()
  // stdio: answer requests in batches of this size, last request first. A
  // partial batch is flushed after `batch_idle`.
  size_t reorder = 1;
  std::chrono::milliseconds batch_idle{5};
  std::chrono::milliseconds delay{0};  // before every reply
  std::chrono::milliseconds slow_delay{2000};
};

enum class StubFault { kNone, kGarbage, kCorrupt, kSlow, kDie };

// Computes replies. Thread-safe.
class StubResponder {
 public:
  static absl::StatusOr<std::unique_ptr<StubResponder>> Create(
      StubOptions options);

  // Output text for an engine input. Echo mode (and anything the other modes
  // cannot handle) returns the text after the control prefix.
  std::string Respond(std::string_view input) const;

  // The fault to inject for `input`; updates the __flaky__ bookkeeping.
  StubFault FaultFor(std::string_view input);

  const StubOptions& options() const { return options_; }

 private:
  explicit StubResponder(StubOptions options) : options_(std::move(options)) {}

  StubOptions options_;
  std::unordered_map<std::string, std::string> canned_;
  std::optional<Resources> resources_;
  std::unique_ptr<HeuristicPerturber> engine_;
  std::mutex mu_;
  std::unordered_set<std::string> flaky_seen_;
};

// Serves the stdio protocol on the given descriptors until EOF. Returns the
// process exit code.
int RunStdioStub(StubResponder& responder, int in_fd, int out_fd);

// In-process HTTP stub.
class StubHttpServer {
 public:
  explicit StubHttpServer(StubResponder* responder);
  ~StubHttpServer();

  // Binds `host:port` (port 0 picks a free one) and serves on a background
  // thread. Returns the bound port.
  absl::StatusOr<int> Start(const std::string& host, int port);
  void Stop();

  // Blocks until the server stops.
  void Wait();

 private:
  StubResponder* responder_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace perturbkit

#endif  // PERTURBKIT_TOOLS_STUB_SERVER_H_
