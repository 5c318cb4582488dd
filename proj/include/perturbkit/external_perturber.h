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

// Client for an external (learned) perturbation engine.
//
// The engine receives "<word> <attribute> <PERT_SEP> <text>" and returns the
// rewritten text. Two transports carry the same JSON bodies:
//
//   stdio  one request per line on the child's stdin, {"id": N, "input": s};
//          one reply per line on its stdout, {"id": N, "output": s}. Replies
//          may arrive in any order and are matched by id.
//   http   POST <path> (default /perturb) with the request body; the reply
//          body is the response record.
//
// Every attempt uses a fresh id. Timeouts, refused connections and malformed
// replies are reported as distinct typed errors (see errors.h) and retried
// with exponential backoff.

#ifndef PERTURBKIT_EXTERNAL_PERTURBER_H_
#define PERTURBKIT_EXTERNAL_PERTURBER_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "perturbkit/attributes.h"
#include "perturbkit/perturber.h"

namespace perturbkit {

enum class TransportKind { kStdio, kHttp };

struct ExternalConfig {
  TransportKind transport = TransportKind::kStdio;
  std::vector<std::string> command;  // stdio: argv of the engine process
  std::string host = "127.0.0.1";    // http
  int port = 0;
  std::string path = "/perturb";
  std::chrono::milliseconds timeout{10000};
  int max_retries = 2;
  std::chrono::milliseconds backoff{20};  // first retry delay, then doubled
  int max_in_flight = 16;
  AttrFormat attr_format = AttrFormat::kPlain;
};

// Parses "stdio:<command line>" (split on whitespace) or
// "http://host:port[/path]" into `config`.
absl::Status ParseEndpoint(std::string_view spec, ExternalConfig* config);

// "<word> <attr-token> <PERT_SEP> <text>".
std::string EncodeExternalInput(const PerturbRequest& request,
                                AttrFormat format);

// The decoded control prefix of an engine input.
struct ExternalInput {
  std::string word;
  Attribute target = Attribute::kMan;
  std::string text;
};
absl::StatusOr<ExternalInput> DecodeExternalInput(std::string_view input);

// One request/response exchange. Implementations are thread-safe; Call may
// be invoked concurrently and replies are routed by id.
class ExternalTransport {
 public:
  virtual ~ExternalTransport() = default;
  virtual absl::StatusOr<std::string> Call(
      uint64_t id, const std::string& input,
      std::chrono::milliseconds timeout) = 0;
  // Replies that arrived for ids nobody was waiting for.
  virtual uint64_t late_replies() const { return 0; }
};

absl::StatusOr<std::unique_ptr<ExternalTransport>> MakeStdioTransport(
    std::vector<std::string> command);
std::unique_ptr<ExternalTransport> MakeHttpTransport(std::string host, int port,
                                                     std::string path);

class ExternalPerturber : public Perturber {
 public:
  static absl::StatusOr<std::unique_ptr<ExternalPerturber>> Create(
      ExternalConfig config);

  ExternalPerturber(ExternalConfig config,
                    std::unique_ptr<ExternalTransport> transport);

  absl::StatusOr<PerturbResult> Perturb(
      const PerturbRequest& request) const override;
  EngineKind kind() const override { return EngineKind::kExternal; }
  int PreferredConcurrency() const override { return config_.max_in_flight; }

  // Sends an already encoded input, honoring the in-flight limit and retry
  // policy.
  absl::StatusOr<std::string> Complete(const std::string& input) const;

  const ExternalConfig& config() const { return config_; }
  uint64_t attempts() const { return attempts_.load(); }
  uint64_t late_replies() const { return transport_->late_replies(); }

 private:
  ExternalConfig config_;
  std::unique_ptr<ExternalTransport> transport_;
  mutable std::counting_semaphore<1 << 16> slots_;
  mutable std::atomic<uint64_t> next_id_{1};
  mutable std::atomic<uint64_t> attempts_{0};
};

}  // namespace perturbkit

#endif  // PERTURBKIT_EXTERNAL_PERTURBER_H_
