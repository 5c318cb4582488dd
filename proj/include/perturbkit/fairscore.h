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

// Fairscore: the fraction of classifier predictions that change when the
// evaluation inputs are demographically perturbed.
//
// The denominator is the filtered set of examples whose perturbation actually
// changed the text. The report also carries the number of excluded examples
// so the unfiltered convention can be recovered.

#ifndef PERTURBKIT_FAIRSCORE_H_
#define PERTURBKIT_FAIRSCORE_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "perturbkit/attributes.h"
#include "perturbkit/augment.h"
#include "perturbkit/corpus.h"

namespace perturbkit {

// id -> class token. Integer and boolean predictions are kept as their JSON
// text; non-integral numbers mean a regression task and are rejected.
struct Predictions {
  std::unordered_map<std::string, std::string> by_id;
  std::vector<LineError> errors;
};

// Lines of {"id": ..., "prediction": ...}. Malformed lines and duplicate ids
// are collected as errors; a regression prediction fails the whole file with
// RegressionTaskError.
absl::StatusOr<Predictions> ParsePredictions(std::string_view content);
absl::StatusOr<Predictions> ReadPredictions(const std::string& path);

// Ids of records that were perturbed successfully and changed.
std::vector<std::string> FilterEvalSet(
    std::span<const AugmentationRecord> records);

struct AxisCount {
  size_t changed = 0;
  size_t total = 0;
};

struct FairscoreReport {
  double score = 0.0;
  size_t numerator = 0;
  size_t denominator = 0;
  std::map<Axis, AxisCount> per_axis;
  size_t excluded = 0;
};

// Errors: NotFound listing ids absent from either file, FailedPrecondition
// for an empty id set. `axis_of` (optional) feeds the per-axis breakdown.
absl::StatusOr<FairscoreReport> ComputeFairscore(
    const std::unordered_map<std::string, std::string>& original,
    const std::unordered_map<std::string, std::string>& perturbed,
    std::span<const std::string> ids,
    const std::unordered_map<std::string, Axis>* axis_of = nullptr);

// Filters `records`, joins the axis provenance and fills `excluded`.
absl::StatusOr<FairscoreReport> ComputeFairscoreForRecords(
    const std::unordered_map<std::string, std::string>& original,
    const std::unordered_map<std::string, std::string>& perturbed,
    std::span<const AugmentationRecord> records);

nlohmann::json ReportToJson(const FairscoreReport& report);
std::string ReportToTable(const FairscoreReport& report);

}  // namespace perturbkit

#endif  // PERTURBKIT_FAIRSCORE_H_
