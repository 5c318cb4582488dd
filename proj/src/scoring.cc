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

#include "perturbkit/scoring.h"

#include <cmath>
#include <string>
#include <vector>

#include "perturbkit/candidates.h"

namespace perturbkit {

absl::Status ScoreWeights::Validate() const {
  if (!std::isfinite(m0) || !std::isfinite(m1) || m0 < 0 || m1 < 0) {
    return absl::InvalidArgumentError("score weights must be finite and >= 0");
  }
  if (m0 == 0 && m1 == 0) {
    return absl::InvalidArgumentError("score weights m0 and m1 are both zero");
  }
  return absl::OkStatus();
}

absl::StatusOr<PerturbabilityBreakdown> PerturbabilityDetail(
    std::span<const Token> tokens, const Lexicon& lexicon,
    const NameTable& names, const Stopwords& stopwords,
    const ScoreWeights& weights) {
  if (absl::Status s = weights.Validate(); !s.ok()) return s;
  if (tokens.empty()) {
    return absl::InvalidArgumentError("perturbability of an empty snippet");
  }
  PerturbabilityBreakdown out;
  out.token_count = tokens.size();
  out.entity_mentions = DetectEntities(tokens, names, stopwords).size();

  // Candidate text is irrelevant here; only positions are counted.
  const std::vector<CandidateWord> candidates =
      FindCandidates(std::string_view(), tokens, lexicon);
  size_t last_start = SIZE_MAX;
  for (const CandidateWord& c : candidates) {
    if (c.token_index != last_start) ++out.dictionary_hits;
    last_start = c.token_index;
  }
  out.score = (weights.m0 * static_cast<double>(out.entity_mentions) +
               weights.m1 * static_cast<double>(out.dictionary_hits)) /
              static_cast<double>(out.token_count);
  return out;
}

absl::StatusOr<double> Perturbability(std::span<const Token> tokens,
                                      const Lexicon& lexicon,
                                      const NameTable& names,
                                      const Stopwords& stopwords,
                                      const ScoreWeights& weights) {
  auto detail = PerturbabilityDetail(tokens, lexicon, names, stopwords, weights);
  if (!detail.ok()) return detail.status();
  return detail->score;
}

}  // namespace perturbkit
