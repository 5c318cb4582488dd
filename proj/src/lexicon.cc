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

#include "perturbkit/lexicon.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "perturbkit/string_util.h"
#include "perturbkit/tokenizer.h"

namespace perturbkit {
namespace {

using json = nlohmann::json;

constexpr std::pair<Category, std::string_view> kCategoryNames[] = {
    {Category::kPronoun, "pronoun"},
    {Category::kCommonNoun, "common_noun"},
    {Category::kAdjective, "adjective"},
    {Category::kName, "name"},
    {Category::kHonorific, "honorific"},
    {Category::kNumberPhrase, "number_phrase"},
};

constexpr std::pair<PronounCase, std::string_view> kCaseNames[] = {
    {PronounCase::kNominative, "nominative"},
    {PronounCase::kAccusative, "accusative"},
    {PronounCase::kPossessiveDeterminer, "possessive_determiner"},
    {PronounCase::kPossessivePronoun, "possessive_pronoun"},
    {PronounCase::kReflexive, "reflexive"},
};

std::optional<Category> ParseCategory(std::string_view name) {
  for (const auto& [category, text] : kCategoryNames) {
    if (text == name) return category;
  }
  return std::nullopt;
}

std::optional<PronounCase> ParseCase(std::string_view name) {
  for (const auto& [pronoun_case, text] : kCaseNames) {
    if (text == name) return pronoun_case;
  }
  return std::nullopt;
}

absl::Status ParseError(size_t line, std::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat("parse error at line ", line, ": ", std::string(what)));
}

absl::Status Violation(size_t line, std::string_view surface,
                       std::string_view what) {
  return absl::FailedPreconditionError(
      absl::StrCat("invariant violation at line ", line, " (entry '",
                   std::string(surface), "'): ", std::string(what)));
}

// Splits content into (line number, line) pairs, skipping blank lines and
// comments, and checks the version header.
absl::StatusOr<std::vector<std::pair<size_t, std::string>>> RecordLines(
    std::string_view content, std::string_view header) {
  std::vector<std::pair<size_t, std::string>> lines;
  std::istringstream in{std::string(content)};
  std::string line;
  size_t number = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != header) {
        return ParseError(number, absl::StrCat("expected header '",
                                               std::string(header), "'"));
      }
      saw_header = true;
      continue;
    }
    lines.emplace_back(number, line);
  }
  if (!saw_header) {
    return ParseError(number == 0 ? 1 : number,
                      absl::StrCat("missing header '", std::string(header),
                                   "' (empty file)"));
  }
  return lines;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::StatusOr<LexiconEntry> ParseEntry(size_t line, const std::string& text) {
  json record;
  try {
    record = json::parse(text);
  } catch (const json::parse_error& e) {
    return ParseError(line, e.what());
  }
  if (!record.is_object()) return ParseError(line, "record is not an object");
  static const std::set<std::string> kKeys = {
      "surface", "axis", "attribute", "category", "features", "swaps",
      "guarded"};
  for (const auto& [key, value] : record.items()) {
    if (!kKeys.count(key)) {
      return ParseError(line, absl::StrCat("unknown field '", key, "'"));
    }
  }
  for (const char* key : {"surface", "axis", "attribute", "category"}) {
    if (!record.contains(key) || !record[key].is_string()) {
      return ParseError(line, absl::StrCat("field '", key,
                                           "' must be a string"));
    }
  }

  LexiconEntry entry;
  entry.surface = record["surface"].get<std::string>();
  if (entry.surface.empty()) return Violation(line, "", "empty surface");
  if (AsciiLower(entry.surface) != entry.surface) {
    return Violation(line, entry.surface, "surface is not lowercase");
  }
  entry.pattern = LowerTokenTexts(entry.surface);
  if (entry.pattern.empty()) {
    return Violation(line, entry.surface, "surface has no tokens");
  }

  const std::string axis_name = record["axis"].get<std::string>();
  std::optional<Axis> axis = ParseAxis(axis_name);
  if (!axis) return ParseError(line, absl::StrCat("unknown axis '", axis_name, "'"));
  entry.axis = *axis;

  const std::string attribute_name = record["attribute"].get<std::string>();
  std::optional<Attribute> attribute = ParseAttribute(attribute_name);
  if (!attribute) {
    return ParseError(line,
                      absl::StrCat("unknown attribute '", attribute_name, "'"));
  }
  if (!BelongsTo(*attribute, entry.axis)) {
    return Violation(line, entry.surface,
                     absl::StrCat("attribute ", attribute_name,
                                  " is not on axis ", Sv(AxisName(entry.axis))));
  }
  entry.attribute = *attribute;

  const std::string category_name = record["category"].get<std::string>();
  std::optional<Category> category = ParseCategory(category_name);
  if (!category) {
    return ParseError(line,
                      absl::StrCat("unknown category '", category_name, "'"));
  }
  entry.category = *category;

  if (record.contains("features")) {
    const json& features = record["features"];
    if (!features.is_object()) return ParseError(line, "features must be an object");
    for (const auto& [key, value] : features.items()) {
      if (!value.is_string()) {
        return ParseError(line, "feature values must be strings");
      }
      const std::string text_value = value.get<std::string>();
      if (key == "case") {
        entry.pronoun_case = ParseCase(text_value);
        if (!entry.pronoun_case) {
          return ParseError(line, absl::StrCat("unknown case '", text_value, "'"));
        }
      } else if (key == "number") {
        if (text_value == "singular") {
          entry.number = GrammaticalNumber::kSingular;
        } else if (text_value == "plural") {
          entry.number = GrammaticalNumber::kPlural;
        } else {
          return ParseError(line,
                            absl::StrCat("unknown number '", text_value, "'"));
        }
      } else {
        return ParseError(line, absl::StrCat("unknown feature '", key, "'"));
      }
    }
  }

  if (record.contains("guarded")) {
    if (!record["guarded"].is_boolean()) {
      return ParseError(line, "guarded must be a boolean");
    }
    entry.guarded = record["guarded"].get<bool>();
  }

  if (record.contains("swaps")) {
    const json& swaps = record["swaps"];
    if (!swaps.is_object()) return ParseError(line, "swaps must be an object");
    for (const auto& [key, value] : swaps.items()) {
      std::optional<Attribute> target = ParseAttribute(key);
      if (!target) {
        return ParseError(line, absl::StrCat("unknown swap attribute '", key, "'"));
      }
      if (!BelongsTo(*target, entry.axis)) {
        return Violation(line, entry.surface,
                         absl::StrCat("swap targets attribute ", key,
                                      " outside axis ", Sv(AxisName(entry.axis))));
      }
      if (!value.is_string() || value.get<std::string>().empty()) {
        return ParseError(line, "swap values must be non-empty strings");
      }
      entry.swaps.emplace(*target, value.get<std::string>());
    }
  }

  if (entry.category == Category::kName) {
    if (record.contains("swaps")) {
      return Violation(line, entry.surface, "name entries carry no swaps");
    }
  } else if (entry.category == Category::kPronoun) {
    if (!entry.pronoun_case) {
      return Violation(line, entry.surface, "pronoun without a case feature");
    }
    for (Attribute target : AttributesOf(entry.axis)) {
      if (!entry.swaps.count(target)) {
        return Violation(line, entry.surface,
                         absl::StrCat("pronoun has no swap for ",
                                      Sv(AttributeName(target))));
      }
    }
  } else {
    for (Attribute target : AttributesOf(entry.axis)) {
      if (target != entry.attribute && !entry.swaps.count(target)) {
        return Violation(line, entry.surface,
                         absl::StrCat("no swap for ", Sv(AttributeName(target))));
      }
    }
  }
  return entry;
}

json EntryToJson(const LexiconEntry& entry) {
  json record = json::object();
  record["surface"] = entry.surface;
  record["axis"] = std::string(AxisName(entry.axis));
  record["attribute"] = std::string(AttributeName(entry.attribute));
  record["category"] = std::string(CategoryName(entry.category));
  if (entry.pronoun_case || entry.number) {
    json features = json::object();
    if (entry.pronoun_case) {
      features["case"] = std::string(PronounCaseName(*entry.pronoun_case));
    }
    if (entry.number) {
      features["number"] = *entry.number == GrammaticalNumber::kSingular
                               ? "singular"
                               : "plural";
    }
    record["features"] = features;
  }
  if (entry.category != Category::kName) {
    json swaps = json::object();
    for (const auto& [target, surface] : entry.swaps) {
      swaps[std::string(AttributeName(target))] = surface;
    }
    record["swaps"] = swaps;
  }
  if (entry.guarded) record["guarded"] = true;
  return record;
}

}  // namespace

std::string_view CategoryName(Category category) {
  for (const auto& [value, text] : kCategoryNames) {
    if (value == category) return text;
  }
  return "";
}

std::string_view PronounCaseName(PronounCase pronoun_case) {
  for (const auto& [value, text] : kCaseNames) {
    if (value == pronoun_case) return text;
  }
  return "";
}

const std::string* LexiconEntry::SwapFor(Attribute target) const {
  auto it = swaps.find(target);
  return it == swaps.end() ? nullptr : &it->second;
}

absl::StatusOr<Lexicon> Lexicon::Parse(std::string_view content) {
  auto lines = RecordLines(content, kLexiconHeader);
  if (!lines.ok()) return lines.status();

  Lexicon lexicon;
  std::set<std::tuple<std::string, Axis, int>> seen;
  for (const auto& [number, text] : *lines) {
    absl::StatusOr<LexiconEntry> entry = ParseEntry(number, text);
    if (!entry.ok()) return entry.status();
    const int case_key =
        entry->pronoun_case ? static_cast<int>(*entry->pronoun_case) : -1;
    if (!seen.emplace(entry->surface, entry->axis, case_key).second) {
      return Violation(number, entry->surface,
                       absl::StrCat("duplicate entry on axis ",
                                    Sv(AxisName(entry->axis))));
    }
    const size_t index = lexicon.entries_.size();
    lexicon.by_first_token_[entry->pattern.front()].push_back(index);
    lexicon.max_pattern_length_ =
        std::max(lexicon.max_pattern_length_, entry->pattern.size());
    lexicon.entries_.push_back(*std::move(entry));
  }
  if (lexicon.entries_.empty()) {
    return ParseError(1, "lexicon has no entries");
  }
  return lexicon;
}

absl::StatusOr<Lexicon> Lexicon::Load(const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  return Parse(*content);
}

std::string Lexicon::Serialize() const {
  std::string out = absl::StrCat(Sv(kLexiconHeader), "\n");
  for (const LexiconEntry& entry : entries_) {
    absl::StrAppend(&out, EntryToJson(entry).dump(), "\n");
  }
  return out;
}

size_t Lexicon::CountForAxis(Axis axis) const {
  return static_cast<size_t>(std::count_if(
      entries_.begin(), entries_.end(),
      [axis](const LexiconEntry& e) { return e.axis == axis; }));
}

std::span<const size_t> Lexicon::EntriesStartingWith(
    std::string_view first_token) const {
  auto it = by_first_token_.find(std::string(first_token));
  if (it == by_first_token_.end()) return {};
  return it->second;
}

const LexiconEntry* Lexicon::FindPronoun(std::string_view surface,
                                         PronounCase pronoun_case) const {
  for (size_t index : EntriesStartingWith(surface)) {
    const LexiconEntry& e = entries_[index];
    if (e.category == Category::kPronoun && e.surface == surface &&
        e.pronoun_case == pronoun_case) {
      return &e;
    }
  }
  return nullptr;
}

std::vector<PronounCase> Lexicon::PronounCases(std::string_view surface) const {
  std::vector<PronounCase> cases;
  for (size_t index : EntriesStartingWith(surface)) {
    const LexiconEntry& e = entries_[index];
    if (e.category == Category::kPronoun && e.surface == surface &&
        std::find(cases.begin(), cases.end(), *e.pronoun_case) == cases.end()) {
      cases.push_back(*e.pronoun_case);
    }
  }
  return cases;
}

absl::StatusOr<NameTable> NameTable::Parse(std::string_view content) {
  auto lines = RecordLines(content, kNamesHeader);
  if (!lines.ok()) return lines.status();

  NameTable table;
  for (const auto& [number, text] : *lines) {
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error& e) {
      return ParseError(number, e.what());
    }
    if (!record.is_object() || !record.contains("axis") ||
        !record.contains("attribute") || !record.contains("names") ||
        !record["axis"].is_string() || !record["attribute"].is_string() ||
        !record["names"].is_array()) {
      return ParseError(number, "expected {axis, attribute, names: [...]}");
    }
    std::optional<Axis> axis = ParseAxis(record["axis"].get<std::string>());
    std::optional<Attribute> attribute =
        ParseAttribute(record["attribute"].get<std::string>());
    if (!axis || !attribute) return ParseError(number, "unknown axis or attribute");
    if (!BelongsTo(*attribute, *axis)) {
      return ParseError(number, "attribute is not on the bucket's axis");
    }
    std::vector<std::string>& bucket = table.buckets_[{*axis, *attribute}];
    for (const json& name : record["names"]) {
      if (!name.is_string() || name.get<std::string>().empty()) {
        return ParseError(number, "names must be non-empty strings");
      }
      const std::string value = name.get<std::string>();
      std::vector<Bucket>& owners = table.by_name_[AsciiLower(value)];
      for (const Bucket& owner : owners) {
        if (owner.first == *axis) {
          return absl::FailedPreconditionError(absl::StrCat(
              "invariant violation at line ", number, ": name '", value,
              "' appears in two ", Sv(AxisName(*axis)), " buckets"));
        }
      }
      owners.emplace_back(*axis, *attribute);
      bucket.push_back(value);
    }
  }
  for (Axis axis : {Axis::kGender, Axis::kRaceEthnicity}) {
    for (Attribute attribute : AttributesOf(axis)) {
      auto it = table.buckets_.find({axis, attribute});
      if (it == table.buckets_.end() || it->second.empty()) {
        return absl::FailedPreconditionError(absl::StrCat(
            "invariant violation: name bucket ", Sv(AxisName(axis)), ":",
            Sv(AttributeName(attribute)), " is empty"));
      }
    }
  }
  return table;
}

absl::StatusOr<NameTable> NameTable::Load(const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  return Parse(*content);
}

std::span<const std::string> NameTable::Names(Axis axis,
                                              Attribute attribute) const {
  auto it = buckets_.find({axis, attribute});
  if (it == buckets_.end()) return {};
  return it->second;
}

std::span<const NameTable::Bucket> NameTable::BucketsOf(
    std::string_view name) const {
  auto it = by_name_.find(AsciiLower(name));
  if (it == by_name_.end()) return {};
  return it->second;
}

bool NameTable::Contains(std::string_view name) const {
  return !BucketsOf(name).empty();
}

std::optional<Attribute> NameTable::AttributeOf(std::string_view name,
                                                Axis axis) const {
  for (const Bucket& bucket : BucketsOf(name)) {
    if (bucket.first == axis) return bucket.second;
  }
  return std::nullopt;
}

absl::StatusOr<std::vector<WordTarget>> PairsFor(std::string_view word,
                                                 Attribute word_attribute,
                                                 const AttributePairSet& pairs) {
  if (!BelongsTo(word_attribute, pairs.axis())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown attribute: ", Sv(AttributeName(word_attribute)),
        " is not on axis ", Sv(AxisName(pairs.axis()))));
  }
  std::vector<WordTarget> out;
  for (Attribute target : AttributesOf(pairs.axis())) {
    if (target != word_attribute && pairs.Contains(word_attribute, target)) {
      out.push_back({std::string(word), target});
    }
  }
  return out;
}

}  // namespace perturbkit
