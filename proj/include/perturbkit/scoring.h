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

// Perturbability: density of demographic signal in a snippet,
//
//   score(s) = (m0 * entities(s) + m1 * hits(s)) / |s|
//
// where entities(s) is the number of entity mentions, hits(s) the number of
// token positions that start a lexicon match, and |s| the token count
// (punctuation included).

#ifndef PERTURBKIT_SCORING_H_
#define PERTURBKIT_SCORING_H_

#include <cstddef>
#include <span>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "perturbkit/entities.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/tokenizer.h"

namespace perturbkit {

struct ScoreWeights {
  double m0 = 1.0;  // entity weight
  double m1 = 1.0;  // word-list weight

  absl::Status Validate() const;
};

struct PerturbabilityBreakdown {
  size_t entity_mentions = 0;
  size_t dictionary_hits = 0;
  size_t token_count = 0;
  double score = 0.0;
};

absl::StatusOr<PerturbabilityBreakdown> PerturbabilityDetail(
    std::span<const Token> tokens, const Lexicon& lexicon,
    const NameTable& names, const Stopwords& stopwords,
    const ScoreWeights& weights = {});

// Errors on an empty token list or invalid weights.
absl::StatusOr<double> Perturbability(std::span<const Token> tokens,
                                      const Lexicon& lexicon,
                                      const NameTable& names,
                                      const Stopwords& stopwords,
                                      const ScoreWeights& weights = {});

}  // namespace perturbkit

#endif  // PERTURBKIT_SCORING_H_
