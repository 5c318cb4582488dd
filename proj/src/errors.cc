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

#include "perturbkit/errors.h"

#include <string>

#include "absl/strings/cord.h"
#include "perturbkit/string_util.h"

namespace perturbkit {
namespace {

absl::Status Tag(absl::Status status, EngineErrorKind kind) {
  status.SetPayload(Sv(kEngineErrorUrl),
                    absl::Cord(Sv(EngineErrorKindName(kind))));
  return status;
}

}  // namespace

absl::Status TimeoutError(std::string_view message) {
  return Tag(absl::DeadlineExceededError(Sv(message)),
             EngineErrorKind::kTimeout);
}

absl::Status ConnectionRefusedError(std::string_view message) {
  return Tag(absl::UnavailableError(Sv(message)),
             EngineErrorKind::kConnectionRefused);
}

absl::Status MalformedResponseError(std::string_view message) {
  return Tag(absl::AbortedError(Sv(message)),
             EngineErrorKind::kMalformedResponse);
}

std::string_view EngineErrorKindName(EngineErrorKind kind) {
  switch (kind) {
    case EngineErrorKind::kTimeout:
      return "timeout";
    case EngineErrorKind::kConnectionRefused:
      return "connection_refused";
    case EngineErrorKind::kMalformedResponse:
      return "malformed_response";
  }
  return "";
}

std::optional<EngineErrorKind> EngineErrorKindOf(const absl::Status& status) {
  auto payload = status.GetPayload(Sv(kEngineErrorUrl));
  if (!payload) return std::nullopt;
  const std::string name(*payload);
  for (EngineErrorKind kind :
       {EngineErrorKind::kTimeout, EngineErrorKind::kConnectionRefused,
        EngineErrorKind::kMalformedResponse}) {
    if (EngineErrorKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

absl::Status RegressionTaskError(std::string_view message) {
  absl::Status status = absl::InvalidArgumentError(Sv(message));
  status.SetPayload(Sv(kRegressionErrorUrl), absl::Cord("1"));
  return status;
}

bool IsRegressionTaskError(const absl::Status& status) {
  return status.GetPayload(Sv(kRegressionErrorUrl)).has_value();
}

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  if (EngineErrorKindOf(status)) return kExitEngine;
  switch (status.code()) {
    case absl::StatusCode::kDeadlineExceeded:
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kAborted:
      return kExitEngine;
    default:
      return kExitData;
  }
}

}  // namespace perturbkit
