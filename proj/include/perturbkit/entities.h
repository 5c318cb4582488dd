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

// Lightweight person-entity detection: a name gazetteer plus a
// capitalization heuristic. Precision-oriented; no statistical model.

#ifndef PERTURBKIT_ENTITIES_H_
#define PERTURBKIT_ENTITIES_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "absl/status/statusor.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/tokenizer.h"

namespace perturbkit {

// Lowercase words never treated as entities by the capitalization rule.
// File format: one word per line; '#' starts a comment line.
class Stopwords {
 public:
  static Stopwords Parse(std::string_view content);
  static absl::StatusOr<Stopwords> Load(const std::string& path);

  // Case-insensitive.
  bool Contains(std::string_view word) const;
  size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

enum class EntityKind { kPersonGazetteer, kCapitalizedHeuristic };

std::string_view EntityKindName(EntityKind kind);

// Tokens [begin, end) of one mention. A merged mention is kPersonGazetteer
// when any of its tokens came from the gazetteer.
struct EntityMention {
  size_t begin = 0;
  size_t end = 0;
  EntityKind kind = EntityKind::kCapitalizedHeuristic;

  size_t size() const { return end - begin; }
  bool operator==(const EntityMention&) const = default;
};

// A token is an entity token when
//   (a) it is capitalized and listed in `names`, or
//   (b) it is title case, not sentence-initial and not a stopword.
// Runs of adjacent entity tokens merge into one mention. A sentence-initial
// title-case non-stopword directly followed by an entity token joins that
// mention ("Queen Victoria").
std::vector<EntityMention> DetectEntities(std::span<const Token> tokens,
                                          const NameTable& names,
                                          const Stopwords& stopwords);

}  // namespace perturbkit

#endif  // PERTURBKIT_ENTITIES_H_
