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

// Dataset augmentation by demographic perturbation.
//
// For every example: join its segments, collect the candidate (word, target)
// pairs, draw one from a per-example random stream, perturb, and split the
// result back into segments. The output has one record per input example, in
// input order, regardless of the worker count.

#ifndef PERTURBKIT_AUGMENT_H_
#define PERTURBKIT_AUGMENT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "perturbkit/attributes.h"
#include "perturbkit/candidates.h"
#include "perturbkit/corpus.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/perturber.h"
#include "perturbkit/resources.h"
#include "perturbkit/scoring.h"

namespace perturbkit {

// One element of a snippet's candidate set: a perturbable word and a target
// attribute on the word's axis.
struct CandidateItem {
  CandidateWord word;
  Attribute target = Attribute::kMan;
};

// Candidates in token order, expanded to every allowed target. A word that
// occurs more than once contributes its first occurrence only, since a
// perturbation rewrites every mention with the same attribute anyway.
std::vector<CandidateItem> BuildCandidateSet(std::string_view text,
                                             std::span<const Token> tokens,
                                             const Lexicon& lexicon,
                                             const PairSelection& pairs);

struct SamplingStrategy {
  enum class Kind { kUniform, kBalanced };

  Kind kind = Kind::kUniform;
  // Balanced only, indexed by Axis. Axes with weight 0 are never drawn.
  std::array<double, 3> axis_weights = {1.0, 1.0, 1.0};

  // "uniform", "balanced", or "balanced:gender=2,race=1,age=1" (unlisted axes
  // keep weight 1).
  static absl::StatusOr<SamplingStrategy> Parse(std::string_view spec);
  std::string ToString() const;
};

// Draws one item. Empty sets, and balanced draws where no present axis has
// positive weight, give nullopt.
std::optional<CandidateItem> SampleCandidate(
    std::span<const CandidateItem> items, std::mt19937_64& rng,
    const SamplingStrategy& strategy);

enum class RecordStatus {
  kOk,             // perturbed (the text may still be unchanged)
  kNoCandidates,   // passed through
  kBelowMinScore,  // passed through
  kFailed,         // engine or split failure, passed through
};

std::string_view RecordStatusName(RecordStatus status);
std::optional<RecordStatus> ParseRecordStatus(std::string_view name);

struct AugmentationRecord {
  std::string id;
  std::vector<std::string> original_segments;
  std::vector<std::string> perturbed_segments;
  nlohmann::json label;  // null when absent

  // Empty unless a candidate was drawn.
  std::string word;
  std::optional<Span> word_span;  // in the joined text
  std::optional<Axis> axis;
  std::optional<Attribute> source;
  std::optional<Attribute> target;

  EngineKind engine = EngineKind::kHeuristicGuarded;
  uint64_t seed = 0;  // the run seed
  bool changed = false;
  RecordStatus status = RecordStatus::kOk;
  std::string error;
  size_t candidate_count = 0;
};

nlohmann::json RecordToJson(const AugmentationRecord& record);
absl::StatusOr<AugmentationRecord> RecordFromJson(const nlohmann::json& json);

// Records file with per-line error isolation; duplicate ids are errors.
struct RecordFile {
  std::vector<AugmentationRecord> records;
  std::vector<LineError> errors;
};
absl::StatusOr<RecordFile> ReadRecords(const std::string& path);
absl::Status WriteRecords(const std::string& path,
                          std::span<const AugmentationRecord> records);

struct AugmentOptions {
  uint64_t seed = 0;
  SamplingStrategy strategy;
  PairSelection pairs = PairSelection::All();
  // Examples whose perturbability is below this pass through unchanged.
  std::optional<double> min_score;
  ScoreWeights weights;
  int workers = 1;
  size_t progress_interval = 1000;
  // Called from worker threads with the number of finished examples, every
  // `progress_interval` examples and once at the end.
  std::function<void(size_t done, size_t total)> progress;
};

struct AugmentSummary {
  size_t total = 0;
  size_t changed = 0;
  size_t unchanged = 0;
  size_t failed = 0;
  size_t no_candidates = 0;
  size_t below_min_score = 0;
};

nlohmann::json SummaryToJson(const AugmentSummary& summary);

struct AugmentResult {
  std::vector<AugmentationRecord> records;
  AugmentSummary summary;
};

absl::StatusOr<AugmentResult> AugmentDataset(std::span<const Example> examples,
                                             const Resources& resources,
                                             const Perturber& perturber,
                                             const AugmentOptions& options);

inline constexpr std::string_view kPerturbedIdSuffix = "-perturbed";

// The perturbed examples with their original ids and labels. With
// `concat_original`, the originals come first and the perturbed copies follow
// with kPerturbedIdSuffix appended to their ids.
std::vector<Example> FairtuneExamples(
    std::span<const AugmentationRecord> records, bool concat_original);

// Cuts every single-segment example into consecutive chunks of at most
// `window` tokens. Chunk k of example "x" gets id "x#k" and the original
// label. Chunks are cut at token boundaries without regard to sentences.
// Multi-segment examples are kept whole.
absl::StatusOr<std::vector<Example>> WindowExamples(
    std::span<const Example> examples, size_t window);

}  // namespace perturbkit

#endif  // PERTURBKIT_AUGMENT_H_
