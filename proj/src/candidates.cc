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

#include "perturbkit/candidates.h"

#include <array>
#include <optional>

namespace perturbkit {
namespace {

bool Matches(const LexiconEntry& entry, std::span<const std::string> lowered,
             std::span<const Token> tokens, size_t pos) {
  if (pos + entry.pattern.size() > lowered.size()) return false;
  for (size_t k = 0; k < entry.pattern.size(); ++k) {
    if (lowered[pos + k] != entry.pattern[k]) return false;
  }
  if (entry.category == Category::kName) {
    const Capitalization c = tokens[pos].capitalization;
    if (c != Capitalization::kTitle && c != Capitalization::kUpper) return false;
  }
  return true;
}

}  // namespace

std::vector<CandidateWord> FindCandidates(std::string_view text,
                                          std::span<const Token> tokens,
                                          const Lexicon& lexicon) {
  std::vector<std::string> lowered;
  lowered.reserve(tokens.size());
  for (const Token& token : tokens) lowered.push_back(AsciiLower(token.text));

  std::vector<CandidateWord> out;
  // End of the last accepted match per axis, for nesting suppression.
  std::array<size_t, 3> covered_until = {0, 0, 0};
  for (size_t pos = 0; pos < tokens.size(); ++pos) {
    if (!tokens[pos].is_word()) continue;
    std::array<std::optional<size_t>, 3> best;
    for (size_t index : lexicon.EntriesStartingWith(lowered[pos])) {
      const LexiconEntry& entry = lexicon.entry(index);
      if (!Matches(entry, lowered, tokens, pos)) continue;
      std::optional<size_t>& slot = best[static_cast<int>(entry.axis)];
      if (!slot ||
          lexicon.entry(*slot).pattern.size() < entry.pattern.size()) {
        slot = index;
      }
    }
    for (Axis axis : kAllAxes) {
      const int a = static_cast<int>(axis);
      if (!best[a]) continue;
      const LexiconEntry& entry = lexicon.entry(*best[a]);
      const size_t end = pos + entry.pattern.size();
      if (pos < covered_until[a]) continue;
      covered_until[a] = end;
      CandidateWord candidate;
      candidate.token_index = pos;
      candidate.token_count = entry.pattern.size();
      candidate.span = {tokens[pos].span.begin, tokens[end - 1].span.end};
      if (candidate.span.end <= text.size()) {
        candidate.surface = std::string(
            text.substr(candidate.span.begin, candidate.span.size()));
      }
      candidate.axis = axis;
      candidate.attribute = entry.attribute;
      candidate.entry_index = *best[a];
      candidate.guarded = entry.guarded;
      out.push_back(std::move(candidate));
    }
  }
  return out;
}

std::vector<CandidateWord> FindCandidates(std::string_view text,
                                          const Lexicon& lexicon) {
  const std::vector<Token> tokens = Tokenize(text);
  return FindCandidates(text, tokens, lexicon);
}

}  // namespace perturbkit
