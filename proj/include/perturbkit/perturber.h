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

// The perturbation interface shared by all engines.

#ifndef PERTURBKIT_PERTURBER_H_
#define PERTURBKIT_PERTURBER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "perturbkit/attributes.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/tokenizer.h"

namespace perturbkit {

enum class EngineKind { kHeuristicNaive, kHeuristicGuarded, kExternal };

// "heuristic_naive", "heuristic_guarded", "external".
std::string_view EngineKindName(EngineKind kind);
// Accepts underscores or hyphens.
std::optional<EngineKind> ParseEngineKind(std::string_view name);

struct SelectedWord {
  std::string surface;
  Span span;  // byte span in the request text
};

struct PerturbRequest {
  std::string text;
  SelectedWord word;
  Axis axis = Axis::kGender;
  Attribute source = Attribute::kWoman;
  Attribute target = Attribute::kMan;

  // Span inside text and matching the surface (case-insensitive), source !=
  // target, both attributes on the axis.
  absl::Status Validate() const;
};

struct Edit {
  Span span;  // in the request text
  std::string original;
  std::string replacement;

  bool operator==(const Edit&) const = default;
};

struct PerturbResult {
  std::string text;
  std::vector<Edit> edits;  // sorted, non-overlapping
  EngineKind engine = EngineKind::kHeuristicGuarded;
};

class Perturber {
 public:
  virtual ~Perturber() = default;

  virtual absl::StatusOr<PerturbResult> Perturb(
      const PerturbRequest& request) const = 0;
  virtual EngineKind kind() const = 0;

  // Requests a caller may usefully keep in flight at once. Pipelines use at
  // least this many workers.
  virtual int PreferredConcurrency() const { return 1; }
};

// Applies sorted, non-overlapping edits.
std::string ApplyEdits(std::string_view text, std::span<const Edit> edits);

// Checks order, bounds and that each edit's original matches the text.
absl::Status ValidateEdits(std::string_view text, std::span<const Edit> edits);

// Token-level diff. Unchanged tokens are aligned by longest common
// subsequence; every gap between aligned tokens becomes one edit, trimmed of
// shared leading and trailing bytes.
std::vector<Edit> DiffEdits(std::string_view before, std::string_view after);

// Runs every request on up to max(workers, PreferredConcurrency()) threads.
// Results are in request order.
std::vector<absl::StatusOr<PerturbResult>> PerturbAll(
    const Perturber& perturber, std::span<const PerturbRequest> requests,
    int workers);

// Builds a request for the first occurrence of `word` in `text` that is a
// lexicon candidate on the target's axis. The source attribute defaults to
// the candidate's attribute. NotFound when the word is not a known term,
// InvalidArgument when it does not occur in the text.
absl::StatusOr<PerturbRequest> BuildRequest(
    const Lexicon& lexicon, std::string_view text, std::string_view word,
    Attribute target, std::optional<Attribute> source = std::nullopt);

}  // namespace perturbkit

#endif  // PERTURBKIT_PERTURBER_H_
