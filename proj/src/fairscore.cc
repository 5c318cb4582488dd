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

#include "perturbkit/fairscore.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "perturbkit/errors.h"
#include "perturbkit/string_util.h"

namespace perturbkit {

using json = nlohmann::json;

absl::StatusOr<Predictions> ParsePredictions(std::string_view content) {
  Predictions out;
  std::istringstream in{std::string(content)};
  std::string line;
  for (size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.is_object()) {
      out.errors.push_back({number, "invalid JSON object"});
      continue;
    }
    auto id = record.find("id");
    auto prediction = record.find("prediction");
    if (id == record.end() || prediction == record.end()) {
      out.errors.push_back({number, "missing id or prediction"});
      continue;
    }
    std::string key;
    if (id->is_string()) {
      key = id->get<std::string>();
    } else if (id->is_number_integer()) {
      key = id->dump();
    } else {
      out.errors.push_back({number, "id must be a string or an integer"});
      continue;
    }
    std::string value;
    if (prediction->is_string()) {
      value = prediction->get<std::string>();
    } else if (prediction->is_number_integer() || prediction->is_boolean()) {
      value = prediction->dump();
    } else if (prediction->is_number_float()) {
      const double v = prediction->get<double>();
      if (std::isfinite(v) && v == std::floor(v)) {
        value = absl::StrCat(static_cast<long long>(v));
      } else {
        return RegressionTaskError(absl::StrCat(
            "line ", number, ": prediction ", prediction->dump(),
            " is continuous; fairscore is defined for classification only"));
      }
    } else {
      out.errors.push_back({number, "prediction must be a class token"});
      continue;
    }
    if (!out.by_id.emplace(key, std::move(value)).second) {
      out.errors.push_back({number, absl::StrCat("duplicate id '", key, "'")});
    }
  }
  return out;
}

absl::StatusOr<Predictions> ReadPredictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParsePredictions(buffer.str());
}

std::vector<std::string> FilterEvalSet(
    std::span<const AugmentationRecord> records) {
  std::vector<std::string> ids;
  for (const AugmentationRecord& record : records) {
    if (record.changed && record.status == RecordStatus::kOk) {
      ids.push_back(record.id);
    }
  }
  return ids;
}

absl::StatusOr<FairscoreReport> ComputeFairscore(
    const std::unordered_map<std::string, std::string>& original,
    const std::unordered_map<std::string, std::string>& perturbed,
    std::span<const std::string> ids,
    const std::unordered_map<std::string, Axis>* axis_of) {
  if (ids.empty()) {
    return absl::FailedPreconditionError(
        "empty evaluation set: no example was changed by perturbation");
  }
  std::vector<std::string> missing;
  for (const std::string& id : ids) {
    if (!original.contains(id) || !perturbed.contains(id)) {
      missing.push_back(id);
    }
  }
  if (!missing.empty()) {
    constexpr size_t kShown = 20;
    std::string shown = absl::StrJoin(
        missing.begin(),
        missing.begin() + std::min(missing.size(), kShown), ", ");
    return absl::NotFoundError(absl::StrCat(
        missing.size(), " id(s) missing from the prediction files: ", shown,
        missing.size() > kShown ? ", ..." : ""));
  }

  FairscoreReport report;
  report.denominator = ids.size();
  for (const std::string& id : ids) {
    const bool flipped = original.at(id) != perturbed.at(id);
    if (flipped) ++report.numerator;
    if (axis_of != nullptr) {
      if (auto it = axis_of->find(id); it != axis_of->end()) {
        AxisCount& count = report.per_axis[it->second];
        ++count.total;
        if (flipped) ++count.changed;
      }
    }
  }
  report.score = static_cast<double>(report.numerator) /
                 static_cast<double>(report.denominator);
  return report;
}

absl::StatusOr<FairscoreReport> ComputeFairscoreForRecords(
    const std::unordered_map<std::string, std::string>& original,
    const std::unordered_map<std::string, std::string>& perturbed,
    std::span<const AugmentationRecord> records) {
  const std::vector<std::string> ids = FilterEvalSet(records);
  std::unordered_map<std::string, Axis> axis_of;
  for (const AugmentationRecord& record : records) {
    if (record.axis.has_value()) axis_of[record.id] = *record.axis;
  }
  absl::StatusOr<FairscoreReport> report =
      ComputeFairscore(original, perturbed, ids, &axis_of);
  if (report.ok()) report->excluded = records.size() - ids.size();
  return report;
}

json ReportToJson(const FairscoreReport& report) {
  json per_axis = json::object();
  for (const auto& [axis, count] : report.per_axis) {
    per_axis[std::string(AxisName(axis))] = {{"changed", count.changed},
                                             {"total", count.total}};
  }
  return {{"score", report.score},
          {"numerator", report.numerator},
          {"denominator", report.denominator},
          {"excluded", report.excluded},
          {"per_axis", per_axis}};
}

std::string ReportToTable(const FairscoreReport& report) {
  std::string out = absl::StrFormat(
      "fairscore  %.4f  (%d of %d predictions changed)\nexcluded   %d\n",
      report.score, report.numerator, report.denominator, report.excluded);
  if (!report.per_axis.empty()) {
    absl::StrAppendFormat(&out, "%-16s %8s %8s %8s\n", "axis", "changed",
                          "total", "rate");
    for (const auto& [axis, count] : report.per_axis) {
      absl::StrAppendFormat(
          &out, "%-16s %8d %8d %8.4f\n", Sv(AxisName(axis)), count.changed,
          count.total,
          count.total == 0 ? 0.0
                           : static_cast<double>(count.changed) / count.total);
    }
  }
  return out;
}

}  // namespace perturbkit
