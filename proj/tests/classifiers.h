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


// Toy classifiers used as fairscore fixtures.

#ifndef PERTURBKIT_TESTS_CLASSIFIERS_H_
#define PERTURBKIT_TESTS_CLASSIFIERS_H_

#include <string>
#include <string_view>
#include <unordered_set>

#include "perturbkit/tokenizer.h"

namespace perturbkit::testing {

// Predicts "1" iff the text contains the token "he" (any case).
inline std::string HeDetector(std::string_view text) {
  for (const Token& token : Tokenize(text)) {
    if (AsciiLower(token.text) == "he") return "1";
  }
  return "0";
}

// Sentiment from a fixed adjective list that holds no demographic terms and
// nothing the perturbers re-inflect, so its predictions cannot depend on
// demographic content.
inline std::string DemographicBlind(std::string_view text) {
  static const auto* positive = new std::unordered_set<std::string>{
      "good", "great", "excellent", "happy", "delicious", "wonderful"};
  static const auto* negative = new std::unordered_set<std::string>{
      "bad", "terrible", "awful", "sad", "bland", "rude"};
  int score = 0;
  for (const Token& token : Tokenize(text)) {
    const std::string word = AsciiLower(token.text);
    score += positive->count(word) ? 1 : 0;
    score -= negative->count(word) ? 1 : 0;
  }
  return score > 0 ? "pos" : score < 0 ? "neg" : "neutral";
}

}  // namespace perturbkit::testing

#endif  // PERTURBKIT_TESTS_CLASSIFIERS_H_
