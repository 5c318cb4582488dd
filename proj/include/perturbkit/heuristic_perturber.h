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

// Rule-based perturbation engines.
//
// Both modes rewrite every term in the snippet whose attribute on the
// request axis equals the source attribute (there is no coreference model),
// and replace names from the name table.
//
// Naive mode is a plain word-list swap: syncretic pronouns take their first
// lexicon reading and nothing else is adjusted. Guarded mode additionally
//   - picks the pronoun case from the right context,
//   - leaves "white"/"black" alone before concrete-object nouns,
//   - re-inflects verbs after a pronoun that became singular "they" (and
//     back, for a closed auxiliary list),
//   - fixes a/an before rewritten words.

#ifndef PERTURBKIT_HEURISTIC_PERTURBER_H_
#define PERTURBKIT_HEURISTIC_PERTURBER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perturbkit/lexicon.h"
#include "perturbkit/perturber.h"
#include "perturbkit/tokenizer.h"

namespace perturbkit {

enum class HeuristicMode { kNaive, kGuarded };

class HeuristicPerturber : public Perturber {
 public:
  // `lexicon` and `names` must outlive the perturber. `seed` feeds the name
  // choice.
  HeuristicPerturber(const Lexicon* lexicon, const NameTable* names,
                     HeuristicMode mode, uint64_t seed = 0);

  absl::StatusOr<PerturbResult> Perturb(
      const PerturbRequest& request) const override;
  EngineKind kind() const override;

  HeuristicMode mode() const { return mode_; }

  // Deterministic replacement for `name` in the (axis, target) bucket.
  // Empty when the bucket is missing.
  std::string ReplacementName(std::string_view name, Axis axis,
                              Attribute target) const;

 private:
  const Lexicon* lexicon_;
  const NameTable* names_;
  HeuristicMode mode_;
  uint64_t seed_;
};

// Case of a pronoun given the next one or two tokens (lowercase). Syncretic
// forms read as possessive determiners before noun-like tokens, otherwise as
// accusative (or possessive pronoun when there is no accusative reading).
// Unknown surfaces fall back to accusative.
PronounCase ResolvePronounCase(const Lexicon& lexicon,
                               std::string_view pronoun,
                               std::span<const std::string> right_context);

// True when `word` (lowercase) starts a noun phrase: not punctuation, not a
// function word, verb or adverb from the closed lists.
bool IsNounLike(std::span<const std::string> right_context);

// True when "white"/"black" followed by `next` should be left alone.
bool IsColorGuardNoun(std::string_view next);

// "an" is required before `word` (vowel sound heuristic with exceptions).
bool NeedsAn(std::string_view word);

// One token of an edited snippet.
struct EditedToken {
  std::string text;
  Span span;  // span of the original token(s) in the request text
  Capitalization capitalization = Capitalization::kLower;  // of the original
  bool edited = false;         // replaced by the perturber
  bool to_singular_they = false;  // a pronoun rewritten to "they"
  bool from_they = false;      // "they" rewritten to "he"/"she"
};

// Repairs around edited tokens: a/an agreement for articles directly before
// an edited token (opening quotes are skipped) and verb agreement within a
// three-token window after a pronoun that switched to or from "they".
// Adverbs are skipped inside the window; punctuation ends it.
std::vector<EditedToken> FixAgreementAndArticles(
    std::vector<EditedToken> tokens);

}  // namespace perturbkit

#endif  // PERTURBKIT_HEURISTIC_PERTURBER_H_
