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

#include "perturbkit/attributes.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "perturbkit/string_util.h"

namespace perturbkit {
namespace {

struct AttributeInfo {
  Attribute attribute;
  Axis axis;
  std::string_view name;
  std::string_view token;
};

constexpr AttributeInfo kAttributeInfo[kNumAttributes] = {
    {Attribute::kMan, Axis::kGender, "man", "man"},
    {Attribute::kWoman, Axis::kGender, "woman", "woman"},
    {Attribute::kNonbinaryUnderspecified, Axis::kGender,
     "nonbinary_underspecified", "non-binary"},
    {Attribute::kWhite, Axis::kRaceEthnicity, "white", "white"},
    {Attribute::kBlack, Axis::kRaceEthnicity, "black", "black"},
    {Attribute::kHispanicLatino, Axis::kRaceEthnicity, "hispanic_latino",
     "hispanic"},
    {Attribute::kAsian, Axis::kRaceEthnicity, "asian", "asian"},
    {Attribute::kNativeAmerican, Axis::kRaceEthnicity, "native_american",
     "native-american"},
    {Attribute::kPacificIslander, Axis::kRaceEthnicity, "pacific_islander",
     "pacific-islander"},
    {Attribute::kChildU18, Axis::kAge, "child_u18", "child"},
    {Attribute::kYoung18To44, Axis::kAge, "young_18_44", "young"},
    {Attribute::kMiddle45To64, Axis::kAge, "middle_45_64", "middle-aged"},
    {Attribute::kSenior65Plus, Axis::kAge, "senior_65p", "senior"},
    {Attribute::kAdultUnspecified, Axis::kAge, "adult_unspecified", "adult"},
};

constexpr Attribute kGenderAttributes[] = {
    Attribute::kMan, Attribute::kWoman, Attribute::kNonbinaryUnderspecified};
constexpr Attribute kRaceAttributes[] = {
    Attribute::kWhite,          Attribute::kBlack,
    Attribute::kHispanicLatino, Attribute::kAsian,
    Attribute::kNativeAmerican, Attribute::kPacificIslander};
constexpr Attribute kAgeAttributes[] = {
    Attribute::kChildU18, Attribute::kYoung18To44, Attribute::kMiddle45To64,
    Attribute::kSenior65Plus, Attribute::kAdultUnspecified};

const AttributeInfo& Info(Attribute attribute) {
  return kAttributeInfo[static_cast<int>(attribute)];
}

// Short axis names used in "axis:attribute" prefixes.
std::string_view AxisPrefix(Axis axis) {
  switch (axis) {
    case Axis::kGender:
      return "gender";
    case Axis::kRaceEthnicity:
      return "race";
    case Axis::kAge:
      return "age";
  }
  return "";
}

}  // namespace

std::string_view AxisName(Axis axis) {
  switch (axis) {
    case Axis::kGender:
      return "gender";
    case Axis::kRaceEthnicity:
      return "race_ethnicity";
    case Axis::kAge:
      return "age";
  }
  return "";
}

std::optional<Axis> ParseAxis(std::string_view name) {
  if (name == "gender") return Axis::kGender;
  if (name == "race_ethnicity" || name == "race" || name == "race/eth" ||
      name == "race_eth") {
    return Axis::kRaceEthnicity;
  }
  if (name == "age") return Axis::kAge;
  return std::nullopt;
}

std::string_view AttributeName(Attribute attribute) {
  return Info(attribute).name;
}

std::optional<Attribute> ParseAttribute(std::string_view name) {
  for (const AttributeInfo& info : kAttributeInfo) {
    if (info.name == name) return info.attribute;
  }
  return std::nullopt;
}

Axis AxisOf(Attribute attribute) { return Info(attribute).axis; }

std::span<const Attribute> AttributesOf(Axis axis) {
  switch (axis) {
    case Axis::kGender:
      return kGenderAttributes;
    case Axis::kRaceEthnicity:
      return kRaceAttributes;
    case Axis::kAge:
      return kAgeAttributes;
  }
  return {};
}

bool BelongsTo(Attribute attribute, Axis axis) {
  return AxisOf(attribute) == axis;
}

std::string AttributeToken(Attribute attribute, AttrFormat format) {
  const AttributeInfo& info = Info(attribute);
  if (format == AttrFormat::kAxisPrefixed) {
    return absl::StrCat(Sv(AxisPrefix(info.axis)), ":", Sv(info.token));
  }
  return std::string(info.token);
}

std::optional<Attribute> ParseAttributeToken(std::string_view token) {
  std::optional<Axis> axis;
  if (auto colon = token.find(':'); colon != std::string_view::npos) {
    axis = ParseAxis(token.substr(0, colon));
    if (!axis) return std::nullopt;
    token = token.substr(colon + 1);
  }
  for (const AttributeInfo& info : kAttributeInfo) {
    if (info.token == token || info.name == token) {
      if (axis && *axis != info.axis) return std::nullopt;
      return info.attribute;
    }
  }
  return std::nullopt;
}

absl::StatusOr<Attribute> ParseAxisAttribute(std::string_view text) {
  std::optional<Attribute> attribute = ParseAttributeToken(text);
  if (!attribute) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown attribute '", std::string(text), "'"));
  }
  return *attribute;
}

AttributePairSet AttributePairSet::Full(Axis axis) {
  std::vector<AttributePair> pairs;
  for (Attribute source : AttributesOf(axis)) {
    for (Attribute target : AttributesOf(axis)) {
      if (source != target) pairs.emplace_back(source, target);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return AttributePairSet(axis, std::move(pairs));
}

absl::StatusOr<AttributePairSet> AttributePairSet::Create(
    Axis axis, std::vector<AttributePair> pairs) {
  for (const auto& [source, target] : pairs) {
    if (source == target) {
      return absl::InvalidArgumentError(absl::StrCat(
          "pair (", Sv(AttributeName(source)), ", ", Sv(AttributeName(target)),
          ") has source == target"));
    }
    if (!BelongsTo(source, axis) || !BelongsTo(target, axis)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "pair (", Sv(AttributeName(source)), ", ", Sv(AttributeName(target)),
          ") is not on axis ", Sv(AxisName(axis))));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return AttributePairSet(axis, std::move(pairs));
}

bool AttributePairSet::Contains(Attribute source, Attribute target) const {
  return std::binary_search(pairs_.begin(), pairs_.end(),
                            AttributePair(source, target));
}

PairSelection PairSelection::All() {
  PairSelection selection;
  for (Axis axis : kAllAxes) selection.Set(AttributePairSet::Full(axis));
  return selection;
}

void PairSelection::Set(AttributePairSet set) {
  const int index = static_cast<int>(set.axis());
  sets_[index] = std::move(set);
}

void PairSelection::Disable(Axis axis) {
  sets_[static_cast<int>(axis)].reset();
}

const AttributePairSet* PairSelection::For(Axis axis) const {
  const auto& set = sets_[static_cast<int>(axis)];
  return set ? &*set : nullptr;
}

absl::StatusOr<PairSelection> PairSelection::Parse(std::string_view spec) {
  std::array<std::vector<AttributePair>, 3> by_axis;
  std::array<bool, 3> seen = {false, false, false};
  for (absl::string_view item :
       absl::StrSplit(absl::string_view(spec.data(), spec.size()), ',',
                      absl::SkipWhitespace())) {
    item = absl::StripAsciiWhitespace(item);
    const size_t colon = item.find(':');
    const size_t arrow = item.find('>');
    if (colon == absl::string_view::npos || arrow == absl::string_view::npos ||
        arrow < colon) {
      return absl::InvalidArgumentError(absl::StrCat(
          "pair '", item, "' is not of the form axis:source>target"));
    }
    std::optional<Axis> axis =
        ParseAxis(std::string_view(item.data(), colon));
    if (!axis) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown axis in pair '", item, "'"));
    }
    auto source = ParseAttributeToken(
        std::string_view(item.data() + colon + 1, arrow - colon - 1));
    auto target = ParseAttributeToken(
        std::string_view(item.data() + arrow + 1, item.size() - arrow - 1));
    if (!source || !target) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown attribute in pair '", item, "'"));
    }
    by_axis[static_cast<int>(*axis)].emplace_back(*source, *target);
    seen[static_cast<int>(*axis)] = true;
  }
  PairSelection selection;
  for (Axis axis : kAllAxes) {
    const int index = static_cast<int>(axis);
    if (!seen[index]) continue;
    absl::StatusOr<AttributePairSet> set =
        AttributePairSet::Create(axis, std::move(by_axis[index]));
    if (!set.ok()) return set.status();
    selection.Set(*std::move(set));
  }
  return selection;
}

}  // namespace perturbkit
