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

#ifndef PERTURBKIT_TOKENIZER_H_
#define PERTURBKIT_TOKENIZER_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace perturbkit {

// Segment separator for multi-field examples.
inline constexpr std::string_view kSepToken = "<SEP>";
// Separator between the control prefix and the input in the external
// perturber encoding.
inline constexpr std::string_view kPertSepToken = "<PERT_SEP>";

enum class Capitalization { kLower, kTitle, kUpper, kMixed };

// Half-open byte range [begin, end) into the source text.
struct Span {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

struct Token {
  std::string text;
  Span span;
  bool sentence_initial = false;
  Capitalization capitalization = Capitalization::kLower;

  // True when the token has at least one letter or digit.
  bool is_word() const;
  // True for the special separator tokens.
  bool is_special() const;
};

// Whitespace-and-punctuation tokenization. Every punctuation character is
// its own token; "<SEP>" and "<PERT_SEP>" are kept whole. The text between
// consecutive tokens is whitespace only, so spans reproduce the input.
std::vector<Token> Tokenize(std::string_view text);

// Rebuilds text from the source and token spans (lossless).
std::string Detokenize(std::string_view source, std::span<const Token> tokens);

Capitalization ClassifyCapitalization(std::string_view word);

// Re-cases `replacement` to match a source token's capitalization class.
// Lowercase sources leave the stored form alone ("black" -> "Asian").
std::string ApplyCapitalization(std::string_view replacement,
                                Capitalization capitalization);

std::string AsciiLower(std::string_view text);

// Tokenizes and lowercases; the key sequence used for lexicon matching.
std::vector<std::string> LowerTokenTexts(std::string_view text);

}  // namespace perturbkit

#endif  // PERTURBKIT_TOKENIZER_H_
