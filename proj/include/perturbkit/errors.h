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

// Typed engine errors and the process exit-code taxonomy.
//
// Engine failures carry a payload under kEngineErrorUrl so callers can tell
// them apart from data errors regardless of the status code.

#ifndef PERTURBKIT_ERRORS_H_
#define PERTURBKIT_ERRORS_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"

namespace perturbkit {

inline constexpr std::string_view kEngineErrorUrl =
    "type.perturbkit/engine_error";
inline constexpr std::string_view kRegressionErrorUrl =
    "type.perturbkit/regression_task";

enum class EngineErrorKind {
  kTimeout,            // DeadlineExceeded
  kConnectionRefused,  // Unavailable
  kMalformedResponse,  // Aborted
};

absl::Status TimeoutError(std::string_view message);
absl::Status ConnectionRefusedError(std::string_view message);
absl::Status MalformedResponseError(std::string_view message);

std::optional<EngineErrorKind> EngineErrorKindOf(const absl::Status& status);
std::string_view EngineErrorKindName(EngineErrorKind kind);

// Error for prediction files that look like regression output.
absl::Status RegressionTaskError(std::string_view message);
bool IsRegressionTaskError(const absl::Status& status);

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitEngine = 3,
};

// Maps a non-OK status to 2 (data) or 3 (engine). OK maps to 0.
int ExitCodeFor(const absl::Status& status);

}  // namespace perturbkit

#endif  // PERTURBKIT_ERRORS_H_
