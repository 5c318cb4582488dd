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

#ifndef PERTURBKIT_CANDIDATES_H_
#define PERTURBKIT_CANDIDATES_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perturbkit/attributes.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/tokenizer.h"

namespace perturbkit {

// A lexicon match over tokens [token_index, token_index + token_count).
struct CandidateWord {
  size_t token_index = 0;
  size_t token_count = 1;
  std::string surface;  // source text of the matched tokens
  Span span;            // byte span in the source text
  Axis axis = Axis::kGender;
  Attribute attribute = Attribute::kMan;
  size_t entry_index = 0;  // first matching lexicon entry
  bool guarded = false;

  size_t token_end() const { return token_index + token_count; }
};

// Scans `tokens` (from Tokenize(text)) for lexicon entries. `surface` is
// left empty when `text` does not cover the spans. Matching is
// case-insensitive except that name entries only match capitalized tokens.
// At each position the longest match per axis wins, and a match nested
// inside a longer match on the same axis is dropped. Output is ordered by
// token position, then axis.
std::vector<CandidateWord> FindCandidates(std::string_view text,
                                          std::span<const Token> tokens,
                                          const Lexicon& lexicon);

// Tokenizes and scans.
std::vector<CandidateWord> FindCandidates(std::string_view text,
                                          const Lexicon& lexicon);

}  // namespace perturbkit

#endif  // PERTURBKIT_CANDIDATES_H_
