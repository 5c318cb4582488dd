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

// Text similarity and annotator agreement metrics over token lists.
//
// Inputs are token texts as produced by Tokenize (case-sensitive). BLEU
// follows the sacrebleu conventions: n-grams up to 4, clipped counts,
// closest reference length for the brevity penalty, and exponential
// smoothing of zero counts. Sentence BLEU uses the effective order; corpus
// BLEU does not. ROUGE follows the rouge-score package, with summary-level
// union LCS for rougeLsum.

#ifndef PERTURBKIT_METRICS_H_
#define PERTURBKIT_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace perturbkit {

using TokenList = std::vector<std::string>;

// Token texts of `text`.
TokenList MetricTokens(std::string_view text);

// One line description of the BLEU setup, printed by `compare`.
std::string BleuConfigDescription();

// Sentence BLEU in [0, 100]. Errors on an empty hypothesis or no references.
absl::StatusOr<double> SentenceBleu(const TokenList& hypothesis,
                                    std::span<const TokenList> references);

// Corpus BLEU over aligned hypotheses and reference sets.
absl::StatusOr<double> CorpusBleu(
    std::span<const TokenList> hypotheses,
    std::span<const std::vector<TokenList>> references);

enum class RougeVariant { kRouge1, kRouge2, kRougeL, kRougeLsum };

std::string_view RougeVariantName(RougeVariant variant);

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Errors on empty inputs. When neither side has any n-gram of the requested
// order (e.g. one-token inputs for rouge2), the score is 1 for identical
// inputs and 0 otherwise. rougeLsum splits both sides into sentences after
// ".", "!" and "?" tokens.
absl::StatusOr<RougeScore> Rouge(const TokenList& hypothesis,
                                 const TokenList& reference,
                                 RougeVariant variant);

// Unit-cost token edit distance, O(min(|a|, |b|)) space.
size_t WordLevenshtein(std::span<const std::string> a,
                       std::span<const std::string> b);

// Mean over positions of the modal share of annotations (absent positions
// count as a distinct token), times 100. Needs at least two annotations.
absl::StatusOr<double> TokenAgreement(std::span<const TokenList> annotations);

// Share of annotations equal to the modal rewrite, times 100. Ties go to the
// first seen rewrite.
absl::StatusOr<double> FullAgreement(std::span<const TokenList> annotations);

struct ExampleScores {
  double bleu = 0.0;
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rouge_l = 0.0;
  double rouge_lsum = 0.0;
  size_t levenshtein = 0;  // against the first reference
};

struct CompareSummary {
  size_t examples = 0;
  double corpus_bleu = 0.0;
  double mean_sentence_bleu = 0.0;
  double rouge1 = 0.0;  // mean F1; rouge against the first reference
  double rouge2 = 0.0;
  double rouge_l = 0.0;
  double rouge_lsum = 0.0;
  double mean_levenshtein = 0.0;
  std::vector<ExampleScores> per_example;
};

// Scores aligned hypothesis/reference texts. Every hypothesis needs at least
// one reference; blank hypotheses are an error.
absl::StatusOr<CompareSummary> CompareTexts(
    std::span<const std::string> hypotheses,
    std::span<const std::vector<std::string>> references);

}  // namespace perturbkit

#endif  // PERTURBKIT_METRICS_H_
