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

#include "perturbkit/perturber.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "perturbkit/candidates.h"
#include "perturbkit/parallel.h"
#include "perturbkit/string_util.h"

namespace perturbkit {
namespace {

// Past this many DP cells the diff degrades to one edit over the changed
// middle.
constexpr size_t kMaxDiffCells = 4u << 20;

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

void AddGapEdit(std::string_view before, std::string_view after,
                size_t b_begin, size_t b_end, size_t a_begin, size_t a_end,
                std::vector<Edit>* edits) {
  std::string_view b = before.substr(b_begin, b_end - b_begin);
  std::string_view a = after.substr(a_begin, a_end - a_begin);
  if (a == b) return;
  size_t lead = 0;
  while (lead < b.size() && lead < a.size() && b[lead] == a[lead] &&
         IsSpace(b[lead])) {
    ++lead;
  }
  size_t trail = 0;
  while (trail < b.size() - lead && trail < a.size() - lead &&
         b[b.size() - 1 - trail] == a[a.size() - 1 - trail] &&
         IsSpace(b[b.size() - 1 - trail])) {
    ++trail;
  }
  Edit edit;
  edit.span = {b_begin + lead, b_end - trail};
  edit.original = std::string(b.substr(lead, b.size() - lead - trail));
  edit.replacement = std::string(a.substr(lead, a.size() - lead - trail));
  edits->push_back(std::move(edit));
}

}  // namespace

std::string_view EngineKindName(EngineKind kind) {
  switch (kind) {
    case EngineKind::kHeuristicNaive:
      return "heuristic_naive";
    case EngineKind::kHeuristicGuarded:
      return "heuristic_guarded";
    case EngineKind::kExternal:
      return "external";
  }
  return "";
}

std::optional<EngineKind> ParseEngineKind(std::string_view name) {
  std::string normalized(name);
  std::replace(normalized.begin(), normalized.end(), '-', '_');
  for (EngineKind kind : {EngineKind::kHeuristicNaive,
                          EngineKind::kHeuristicGuarded,
                          EngineKind::kExternal}) {
    if (EngineKindName(kind) == normalized) return kind;
  }
  return std::nullopt;
}

absl::Status PerturbRequest::Validate() const {
  if (word.span.begin >= word.span.end || word.span.end > text.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("word span [", word.span.begin, ", ", word.span.end,
                     ") is not inside the text"));
  }
  if (!word.surface.empty() &&
      AsciiLower(text.substr(word.span.begin, word.span.size())) !=
          AsciiLower(word.surface)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "word '", word.surface, "' does not match the text at its span"));
  }
  if (source == target) {
    return absl::InvalidArgumentError(absl::StrCat(
        "precondition violation: source and target are both ",
        Sv(AttributeName(source))));
  }
  if (!BelongsTo(source, axis) || !BelongsTo(target, axis)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "attributes ", Sv(AttributeName(source)), " -> ",
        Sv(AttributeName(target)), " are not both on axis ",
        Sv(AxisName(axis))));
  }
  return absl::OkStatus();
}

std::string ApplyEdits(std::string_view text, std::span<const Edit> edits) {
  std::string out;
  out.reserve(text.size());
  size_t cursor = 0;
  for (const Edit& edit : edits) {
    out.append(text.substr(cursor, edit.span.begin - cursor));
    out.append(edit.replacement);
    cursor = edit.span.end;
  }
  out.append(text.substr(cursor));
  return out;
}

absl::Status ValidateEdits(std::string_view text, std::span<const Edit> edits) {
  size_t cursor = 0;
  for (const Edit& edit : edits) {
    if (edit.span.begin < cursor || edit.span.end < edit.span.begin ||
        edit.span.end > text.size()) {
      return absl::InvalidArgumentError("edits overlap or leave the text");
    }
    if (text.substr(edit.span.begin, edit.span.size()) != edit.original) {
      return absl::InvalidArgumentError(
          absl::StrCat("edit original '", edit.original,
                       "' does not match the text"));
    }
    cursor = edit.span.end;
  }
  return absl::OkStatus();
}

std::vector<Edit> DiffEdits(std::string_view before, std::string_view after) {
  const std::vector<Token> a = Tokenize(before);
  const std::vector<Token> b = Tokenize(after);
  std::vector<Edit> edits;
  if (before == after) return edits;

  // Shared prefix and suffix tokens are aligned without the DP.
  size_t head = 0;
  while (head < a.size() && head < b.size() && a[head].text == b[head].text) {
    ++head;
  }
  size_t tail = 0;
  while (tail < a.size() - head && tail < b.size() - head &&
         a[a.size() - 1 - tail].text == b[b.size() - 1 - tail].text) {
    ++tail;
  }
  const size_t n = a.size() - head - tail;
  const size_t m = b.size() - head - tail;

  // Aligned (i, j) pairs in increasing order.
  std::vector<std::pair<size_t, size_t>> matches;
  for (size_t k = 0; k < head; ++k) matches.emplace_back(k, k);
  if (n > 0 && m > 0 && n * m <= kMaxDiffCells) {
    std::vector<std::vector<uint32_t>> lcs(n + 1,
                                           std::vector<uint32_t>(m + 1, 0));
    for (size_t i = n; i-- > 0;) {
      for (size_t j = m; j-- > 0;) {
        lcs[i][j] = a[head + i].text == b[head + j].text
                        ? lcs[i + 1][j + 1] + 1
                        : std::max(lcs[i + 1][j], lcs[i][j + 1]);
      }
    }
    size_t i = 0;
    size_t j = 0;
    while (i < n && j < m) {
      if (a[head + i].text == b[head + j].text) {
        matches.emplace_back(head + i, head + j);
        ++i;
        ++j;
      } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
        ++i;
      } else {
        ++j;
      }
    }
  }
  for (size_t k = 0; k < tail; ++k) {
    matches.emplace_back(a.size() - tail + k, b.size() - tail + k);
  }

  // Walk the gaps between consecutive aligned tokens.
  size_t a_cursor = 0;
  size_t b_cursor = 0;
  for (const auto& [i, j] : matches) {
    AddGapEdit(before, after, a_cursor, a[i].span.begin, b_cursor,
               b[j].span.begin, &edits);
    a_cursor = a[i].span.end;
    b_cursor = b[j].span.end;
  }
  AddGapEdit(before, after, a_cursor, before.size(), b_cursor, after.size(),
             &edits);
  return edits;
}

std::vector<absl::StatusOr<PerturbResult>> PerturbAll(
    const Perturber& perturber, std::span<const PerturbRequest> requests,
    int workers) {
  std::vector<absl::StatusOr<PerturbResult>> results(
      requests.size(), absl::UnknownError("not run"));
  ParallelFor(requests.size(),
              std::max(workers, perturber.PreferredConcurrency()),
              [&](size_t i) { results[i] = perturber.Perturb(requests[i]); });
  return results;
}

absl::StatusOr<PerturbRequest> BuildRequest(const Lexicon& lexicon,
                                            std::string_view text,
                                            std::string_view word,
                                            Attribute target,
                                            std::optional<Attribute> source) {
  const Axis axis = AxisOf(target);
  const std::vector<std::string> wanted = LowerTokenTexts(word);
  if (wanted.empty()) return absl::InvalidArgumentError("empty word");
  const std::vector<Token> tokens = Tokenize(text);

  bool occurs = false;
  for (size_t i = 0; i + wanted.size() <= tokens.size(); ++i) {
    bool equal = true;
    for (size_t k = 0; k < wanted.size() && equal; ++k) {
      equal = AsciiLower(tokens[i + k].text) == wanted[k];
    }
    if (equal) {
      occurs = true;
      break;
    }
  }
  if (!occurs) {
    return absl::InvalidArgumentError(
        absl::StrCat("word '", Sv(word), "' does not occur in the text"));
  }

  bool known = false;
  for (const CandidateWord& c : FindCandidates(text, tokens, lexicon)) {
    if (LowerTokenTexts(c.surface) != wanted) continue;
    known = true;
    if (c.axis != axis) continue;
    if (source && c.attribute != *source) continue;
    PerturbRequest request;
    request.text = std::string(text);
    request.word = {c.surface, c.span};
    request.axis = axis;
    request.source = c.attribute;
    request.target = target;
    if (absl::Status s = request.Validate(); !s.ok()) return s;
    return request;
  }
  if (known) {
    return absl::InvalidArgumentError(absl::StrCat(
        "word '", Sv(word), "' has no ", Sv(AxisName(axis)),
        " reading with the requested source attribute"));
  }
  return absl::NotFoundError(absl::StrCat(
      "unknown word '", Sv(word), "': not in the lexicon or name tables"));
}

}  // namespace perturbkit
