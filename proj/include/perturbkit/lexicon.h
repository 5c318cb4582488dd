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

// Demographic term dictionary and name tables.
//
// Lexicon file: UTF-8, first line "perturbkit-lexicon v1", then one JSON
// object per line:
//
//   {"surface": "her", "axis": "gender", "attribute": "woman",
//    "category": "pronoun",
//    "features": {"case": "accusative", "number": "singular"},
//    "swaps": {"man": "him", "woman": "her",
//              "nonbinary_underspecified": "them"},
//    "guarded": true}
//
// `features` and `guarded` are optional; `swaps` is required for every
// category except "name" and forbidden for names. Name table file: first
// line "perturbkit-names v1", then {"axis", "attribute", "names": [...]}.
// Blank lines and lines starting with '#' are ignored in both files.
//
// Both structures are immutable after loading and safe to share between
// threads.

#ifndef PERTURBKIT_LEXICON_H_
#define PERTURBKIT_LEXICON_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "perturbkit/attributes.h"

namespace perturbkit {

inline constexpr std::string_view kLexiconHeader = "perturbkit-lexicon v1";
inline constexpr std::string_view kNamesHeader = "perturbkit-names v1";

enum class Category {
  kPronoun,
  kCommonNoun,
  kAdjective,
  kName,
  kHonorific,
  kNumberPhrase,
};

enum class PronounCase {
  kNominative,
  kAccusative,
  kPossessiveDeterminer,
  kPossessivePronoun,
  kReflexive,
};

enum class GrammaticalNumber { kSingular, kPlural };

std::string_view CategoryName(Category category);
std::string_view PronounCaseName(PronounCase pronoun_case);

struct LexiconEntry {
  std::string surface;               // lowercase, as written in the file
  std::vector<std::string> pattern;  // lowercase tokens of `surface`
  Axis axis = Axis::kGender;
  Attribute attribute = Attribute::kMan;
  Category category = Category::kCommonNoun;
  std::optional<PronounCase> pronoun_case;
  std::optional<GrammaticalNumber> number;
  std::map<Attribute, std::string> swaps;
  bool guarded = false;

  const std::string* SwapFor(Attribute target) const;
};

class Lexicon {
 public:
  static absl::StatusOr<Lexicon> Parse(std::string_view content);
  static absl::StatusOr<Lexicon> Load(const std::string& path);

  // Serializes in load order, one record per line, keys sorted.
  std::string Serialize() const;

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  const LexiconEntry& entry(size_t index) const { return entries_[index]; }
  size_t size() const { return entries_.size(); }
  size_t CountForAxis(Axis axis) const;
  size_t max_pattern_length() const { return max_pattern_length_; }

  // Entries whose pattern starts with `first_token` (lowercase), in file
  // order.
  std::span<const size_t> EntriesStartingWith(std::string_view first_token) const;

  // Pronoun entry for (surface, case), if any.
  const LexiconEntry* FindPronoun(std::string_view surface,
                                  PronounCase pronoun_case) const;
  // Every case the pronoun surface can take on `axis`, in file order.
  std::vector<PronounCase> PronounCases(std::string_view surface) const;

 private:
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::vector<size_t>> by_first_token_;
  size_t max_pattern_length_ = 0;
};

class NameTable {
 public:
  using Bucket = std::pair<Axis, Attribute>;

  static absl::StatusOr<NameTable> Parse(std::string_view content);
  static absl::StatusOr<NameTable> Load(const std::string& path);

  // Names for (axis, attribute); empty when the bucket is absent.
  std::span<const std::string> Names(Axis axis, Attribute attribute) const;

  // Buckets containing `name` (case-insensitive).
  std::span<const Bucket> BucketsOf(std::string_view name) const;
  bool Contains(std::string_view name) const;
  // Attribute of `name` on `axis`, if it is listed there.
  std::optional<Attribute> AttributeOf(std::string_view name, Axis axis) const;

  size_t size() const { return buckets_.size(); }

 private:
  std::map<Bucket, std::vector<std::string>> buckets_;
  std::unordered_map<std::string, std::vector<Bucket>> by_name_;
};

// One (word, target) item per pair (source, target) in `pairs` whose source
// is the word's attribute. Targets follow the axis attribute order.
struct WordTarget {
  std::string word;
  Attribute target;
  bool operator==(const WordTarget&) const = default;
};
absl::StatusOr<std::vector<WordTarget>> PairsFor(std::string_view word,
                                                 Attribute word_attribute,
                                                 const AttributePairSet& pairs);

}  // namespace perturbkit

#endif  // PERTURBKIT_LEXICON_H_
