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

// The perturbkit command line tool.
//
// Subcommands: score, perturb, augment, fairtune, fairscore, compare and
// lexicon. Option values come from, in decreasing precedence: flags,
// PERTURBKIT_<FLAG> environment variables (e.g. PERTURBKIT_MIN_SCORE), the
// config file named by --config or PERTURBKIT_CONFIG, and built-in defaults.
// Config files hold "key = value" lines keyed by flag name.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 engine error.

#ifndef PERTURBKIT_TOOLS_CLI_H_
#define PERTURBKIT_TOOLS_CLI_H_

#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace perturbkit {

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Parses a config document: "key = value" (or "key: value") lines, '#'
// comments, optional [section] headers (ignored). Keys are normalized to
// flag spelling ("min_score" -> "min-score"); surrounding quotes are
// stripped from values.
absl::StatusOr<std::map<std::string, std::string>> ParseConfig(
    std::string_view content);

}  // namespace perturbkit

#endif  // PERTURBKIT_TOOLS_CLI_H_
