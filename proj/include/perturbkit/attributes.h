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

// Demographic taxonomy: axes, the attributes on each axis, and the sets of
// (source, target) attribute pairs a perturbation may use.

#ifndef PERTURBKIT_ATTRIBUTES_H_
#define PERTURBKIT_ATTRIBUTES_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace perturbkit {

enum class Axis { kGender, kRaceEthnicity, kAge };

inline constexpr std::array<Axis, 3> kAllAxes = {
    Axis::kGender, Axis::kRaceEthnicity, Axis::kAge};

// Attribute ids are grouped by axis; the order within an axis is the
// canonical order used for candidate expansion.
enum class Attribute {
  kMan,
  kWoman,
  kNonbinaryUnderspecified,
  kWhite,
  kBlack,
  kHispanicLatino,
  kAsian,
  kNativeAmerican,
  kPacificIslander,
  kChildU18,
  kYoung18To44,
  kMiddle45To64,
  kSenior65Plus,
  kAdultUnspecified,
};

inline constexpr int kNumAttributes = 14;

// How an attribute is rendered in the learned perturber's control prefix.
enum class AttrFormat { kPlain, kAxisPrefixed };

std::string_view AxisName(Axis axis);
std::optional<Axis> ParseAxis(std::string_view name);

// Canonical snake_case id, e.g. "nonbinary_underspecified".
std::string_view AttributeName(Attribute attribute);
std::optional<Attribute> ParseAttribute(std::string_view name);

Axis AxisOf(Attribute attribute);
std::span<const Attribute> AttributesOf(Axis axis);
bool BelongsTo(Attribute attribute, Axis axis);

// Parses "axis:attribute" ("gender:man", "race:asian") or a bare attribute
// id. Accepts the wire tokens produced by AttributeToken as well.
absl::StatusOr<Attribute> ParseAxisAttribute(std::string_view text);

// Token used in the external perturber encoding: "man", "non-binary",
// "native-american", ... or "gender:man" when axis-prefixed.
std::string AttributeToken(Attribute attribute, AttrFormat format);

// Inverse of AttributeToken for either format.
std::optional<Attribute> ParseAttributeToken(std::string_view token);

using AttributePair = std::pair<Attribute, Attribute>;

// A set of ordered (source, target) pairs on a single axis.
class AttributePairSet {
 public:
  // All ordered pairs with source != target.
  static AttributePairSet Full(Axis axis);
  static absl::StatusOr<AttributePairSet> Create(
      Axis axis, std::vector<AttributePair> pairs);

  Axis axis() const { return axis_; }
  const std::vector<AttributePair>& pairs() const { return pairs_; }
  bool Contains(Attribute source, Attribute target) const;

 private:
  AttributePairSet(Axis axis, std::vector<AttributePair> pairs)
      : axis_(axis), pairs_(std::move(pairs)) {}

  Axis axis_;
  std::vector<AttributePair> pairs_;  // sorted, unique
};

// One optional pair set per axis. Axes without a set are disabled.
class PairSelection {
 public:
  // Full pair sets for every axis.
  static PairSelection All();
  static PairSelection None() { return PairSelection(); }

  void Set(AttributePairSet set);
  void Disable(Axis axis);
  const AttributePairSet* For(Axis axis) const;

  // Parses a comma separated list of "axis:source>target" items, e.g.
  // "gender:woman>man,race:black>asian". Only the listed axes are enabled.
  static absl::StatusOr<PairSelection> Parse(std::string_view spec);

 private:
  std::array<std::optional<AttributePairSet>, 3> sets_;
};

}  // namespace perturbkit

#endif  // PERTURBKIT_ATTRIBUTES_H_
