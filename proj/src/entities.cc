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

#include "perturbkit/entities.h"

#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "perturbkit/string_util.h"

namespace perturbkit {
namespace {

bool IsCapitalized(const Token& token) {
  return token.capitalization == Capitalization::kTitle ||
         token.capitalization == Capitalization::kUpper;
}

}  // namespace

Stopwords Stopwords::Parse(std::string_view content) {
  Stopwords stopwords;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string word(absl::StripAsciiWhitespace(line));
    if (word.empty() || word[0] == '#') continue;
    stopwords.words_.insert(AsciiLower(word));
  }
  return stopwords;
}

absl::StatusOr<Stopwords> Stopwords::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

bool Stopwords::Contains(std::string_view word) const {
  return words_.count(AsciiLower(word)) > 0;
}

std::string_view EntityKindName(EntityKind kind) {
  return kind == EntityKind::kPersonGazetteer ? "person_gazetteer"
                                              : "capitalized_heuristic";
}

std::vector<EntityMention> DetectEntities(std::span<const Token> tokens,
                                          const NameTable& names,
                                          const Stopwords& stopwords) {
  enum Mark { kNone, kGazetteer, kHeuristic };
  std::vector<Mark> marks(tokens.size(), kNone);
  for (size_t i = 0; i < tokens.size(); ++i) {
    const Token& token = tokens[i];
    if (!token.is_word()) continue;
    if (IsCapitalized(token) && names.Contains(token.text)) {
      marks[i] = kGazetteer;
    } else if (token.capitalization == Capitalization::kTitle &&
               !token.sentence_initial && !stopwords.Contains(token.text)) {
      marks[i] = kHeuristic;
    }
  }
  // Sentence-initial title words that lead into an entity ("Queen Victoria").
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    const Token& token = tokens[i];
    if (marks[i] == kNone && marks[i + 1] != kNone && token.is_word() &&
        token.sentence_initial &&
        token.capitalization == Capitalization::kTitle &&
        !stopwords.Contains(token.text)) {
      marks[i] = kHeuristic;
    }
  }

  std::vector<EntityMention> mentions;
  size_t i = 0;
  while (i < tokens.size()) {
    if (marks[i] == kNone) {
      ++i;
      continue;
    }
    EntityMention mention{i, i, EntityKind::kCapitalizedHeuristic};
    while (i < tokens.size() && marks[i] != kNone) {
      if (marks[i] == kGazetteer) mention.kind = EntityKind::kPersonGazetteer;
      ++i;
    }
    mention.end = i;
    mentions.push_back(mention);
  }
  return mentions;
}

}  // namespace perturbkit
