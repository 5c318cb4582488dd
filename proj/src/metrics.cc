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

#include "perturbkit/metrics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "perturbkit/tokenizer.h"

namespace perturbkit {
namespace {

constexpr int kMaxOrder = 4;

using NgramCounts = std::map<std::span<const std::string>, int,
                             decltype([](std::span<const std::string> a,
                                         std::span<const std::string> b) {
                               return std::lexicographical_compare(
                                   a.begin(), a.end(), b.begin(), b.end());
                             })>;

NgramCounts CountNgrams(const TokenList& tokens, size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::span<const std::string>(tokens).subspan(i, n)];
  }
  return counts;
}

struct BleuStats {
  std::array<double, kMaxOrder> correct = {};
  std::array<double, kMaxOrder> total = {};
  double hyp_len = 0;
  double ref_len = 0;
};

// Accumulates clipped n-gram matches of one segment into `stats`.
void AddSegment(const TokenList& hypothesis,
                std::span<const TokenList> references, BleuStats* stats) {
  // Closest reference length; ties go to the shorter reference.
  size_t closest = references.front().size();
  for (const TokenList& ref : references) {
    const auto d = [&](size_t len) {
      return std::llabs(static_cast<long long>(len) -
                        static_cast<long long>(hypothesis.size()));
    };
    if (d(ref.size()) < d(closest) ||
        (d(ref.size()) == d(closest) && ref.size() < closest)) {
      closest = ref.size();
    }
  }
  stats->hyp_len += hypothesis.size();
  stats->ref_len += closest;
  for (size_t n = 1; n <= kMaxOrder; ++n) {
    NgramCounts hyp = CountNgrams(hypothesis, n);
    NgramCounts max_ref;
    for (const TokenList& ref : references) {
      for (const auto& [gram, count] : CountNgrams(ref, n)) {
        int& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    for (const auto& [gram, count] : hyp) {
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) stats->correct[n - 1] += std::min(count, it->second);
    }
    if (hypothesis.size() >= n) stats->total[n - 1] += hypothesis.size() - n + 1;
  }
}

double ComputeBleu(const BleuStats& stats, bool effective_order) {
  if (std::all_of(stats.correct.begin(), stats.correct.end(),
                  [](double c) { return c == 0; })) {
    return 0.0;
  }
  std::array<double, kMaxOrder> precisions = {};
  double smooth = 1.0;
  int order = kMaxOrder;
  for (int n = 1; n <= kMaxOrder; ++n) {
    if (stats.total[n - 1] == 0) break;
    if (effective_order) order = n;
    if (stats.correct[n - 1] == 0) {
      smooth *= 2;
      precisions[n - 1] = 100.0 / (smooth * stats.total[n - 1]);
    } else {
      precisions[n - 1] = 100.0 * stats.correct[n - 1] / stats.total[n - 1];
    }
  }
  double bp = 1.0;
  if (stats.hyp_len < stats.ref_len) {
    bp = stats.hyp_len > 0 ? std::exp(1.0 - stats.ref_len / stats.hyp_len)
                           : 0.0;
  }
  double log_sum = 0.0;
  for (int n = 0; n < order; ++n) {
    if (precisions[n] == 0) return 0.0;
    log_sum += std::log(precisions[n]);
  }
  return bp * std::exp(log_sum / order);
}

double FMeasure(double precision, double recall) {
  return precision + recall > 0
             ? 2 * precision * recall / (precision + recall)
             : 0.0;
}

RougeScore FromCounts(double hits, double hyp_total, double ref_total) {
  RougeScore score;
  score.precision = hyp_total > 0 ? hits / hyp_total : 0.0;
  score.recall = ref_total > 0 ? hits / ref_total : 0.0;
  score.f1 = FMeasure(score.precision, score.recall);
  return score;
}

// table[i][j] = LCS length of ref[:i] and hyp[:j].
std::vector<std::vector<int>> LcsTable(const TokenList& ref,
                                       const TokenList& hyp) {
  std::vector<std::vector<int>> table(ref.size() + 1,
                                      std::vector<int>(hyp.size() + 1, 0));
  for (size_t i = 1; i <= ref.size(); ++i) {
    for (size_t j = 1; j <= hyp.size(); ++j) {
      table[i][j] = ref[i - 1] == hyp[j - 1]
                        ? table[i - 1][j - 1] + 1
                        : std::max(table[i - 1][j], table[i][j - 1]);
    }
  }
  return table;
}

// Indices into `ref` of one LCS, using rouge-score's backtracking order.
std::vector<size_t> LcsIndices(const TokenList& ref, const TokenList& hyp) {
  const auto table = LcsTable(ref, hyp);
  std::vector<size_t> out;
  size_t i = ref.size();
  size_t j = hyp.size();
  while (i > 0 && j > 0) {
    if (ref[i - 1] == hyp[j - 1]) {
      out.push_back(i - 1);
      --i;
      --j;
    } else if (table[i][j - 1] > table[i - 1][j]) {
      --j;
    } else {
      --i;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<TokenList> SplitSentences(const TokenList& tokens) {
  std::vector<TokenList> sentences(1);
  for (const std::string& token : tokens) {
    sentences.back().push_back(token);
    if (token == "." || token == "!" || token == "?") sentences.emplace_back();
  }
  if (sentences.back().empty()) sentences.pop_back();
  return sentences;
}

RougeScore SummaryLevelLcs(const TokenList& hypothesis,
                           const TokenList& reference) {
  const std::vector<TokenList> ref_sents = SplitSentences(reference);
  const std::vector<TokenList> hyp_sents = SplitSentences(hypothesis);
  std::map<std::string, int> ref_counts;
  std::map<std::string, int> hyp_counts;
  for (const std::string& t : reference) ++ref_counts[t];
  for (const std::string& t : hypothesis) ++hyp_counts[t];
  double hits = 0;
  for (const TokenList& r : ref_sents) {
    std::set<size_t> uni;
    for (const TokenList& h : hyp_sents) {
      for (size_t index : LcsIndices(r, h)) uni.insert(index);
    }
    for (size_t index : uni) {
      const std::string& t = r[index];
      if (hyp_counts[t] > 0 && ref_counts[t] > 0) {
        ++hits;
        --hyp_counts[t];
        --ref_counts[t];
      }
    }
  }
  return FromCounts(hits, hypothesis.size(), reference.size());
}

absl::Status CheckAnnotations(std::span<const TokenList> annotations) {
  if (annotations.size() < 2) {
    return absl::InvalidArgumentError("agreement needs at least two annotations");
  }
  return absl::OkStatus();
}

}  // namespace

TokenList MetricTokens(std::string_view text) {
  TokenList out;
  for (Token& token : Tokenize(text)) out.push_back(std::move(token.text));
  return out;
}

std::string BleuConfigDescription() {
  return "BLEU: max n-gram 4, clipped counts, closest reference length, "
         "smoothing=exp, effective order for sentence BLEU only, "
         "perturbkit tokenizer, case-sensitive";
}

absl::StatusOr<double> SentenceBleu(const TokenList& hypothesis,
                                    std::span<const TokenList> references) {
  if (hypothesis.empty()) return absl::InvalidArgumentError("empty hypothesis");
  if (references.empty()) return absl::InvalidArgumentError("no references");
  BleuStats stats;
  AddSegment(hypothesis, references, &stats);
  return ComputeBleu(stats, /*effective_order=*/true);
}

absl::StatusOr<double> CorpusBleu(
    std::span<const TokenList> hypotheses,
    std::span<const std::vector<TokenList>> references) {
  if (hypotheses.empty()) return absl::InvalidArgumentError("empty corpus");
  if (hypotheses.size() != references.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat(hypotheses.size(), " hypotheses but ", references.size(),
                     " reference sets"));
  }
  BleuStats stats;
  for (size_t i = 0; i < hypotheses.size(); ++i) {
    if (references[i].empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("no references for hypothesis ", i));
    }
    AddSegment(hypotheses[i], references[i], &stats);
  }
  return ComputeBleu(stats, /*effective_order=*/false);
}

std::string_view RougeVariantName(RougeVariant variant) {
  switch (variant) {
    case RougeVariant::kRouge1:
      return "rouge1";
    case RougeVariant::kRouge2:
      return "rouge2";
    case RougeVariant::kRougeL:
      return "rougeL";
    case RougeVariant::kRougeLsum:
      return "rougeLsum";
  }
  return "";
}

absl::StatusOr<RougeScore> Rouge(const TokenList& hypothesis,
                                 const TokenList& reference,
                                 RougeVariant variant) {
  if (hypothesis.empty() || reference.empty()) {
    return absl::InvalidArgumentError("empty input to rouge");
  }
  switch (variant) {
    case RougeVariant::kRouge1:
    case RougeVariant::kRouge2: {
      const size_t n = variant == RougeVariant::kRouge1 ? 1 : 2;
      if (hypothesis.size() < n && reference.size() < n) {
        const double v = hypothesis == reference ? 1.0 : 0.0;
        return RougeScore{v, v, v};
      }
      NgramCounts hyp = CountNgrams(hypothesis, n);
      NgramCounts ref = CountNgrams(reference, n);
      double hits = 0;
      for (const auto& [gram, count] : hyp) {
        if (auto it = ref.find(gram); it != ref.end()) {
          hits += std::min(count, it->second);
        }
      }
      const double hyp_total =
          hypothesis.size() >= n ? hypothesis.size() - n + 1 : 0;
      const double ref_total =
          reference.size() >= n ? reference.size() - n + 1 : 0;
      return FromCounts(hits, hyp_total, ref_total);
    }
    case RougeVariant::kRougeL: {
      const auto table = LcsTable(reference, hypothesis);
      return FromCounts(table[reference.size()][hypothesis.size()],
                        hypothesis.size(), reference.size());
    }
    case RougeVariant::kRougeLsum:
      return SummaryLevelLcs(hypothesis, reference);
  }
  return absl::InvalidArgumentError("unknown rouge variant");
}

size_t WordLevenshtein(std::span<const std::string> a,
                       std::span<const std::string> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<size_t> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diagonal = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t above = row[j];
      row[j] = std::min({above + 1, row[j - 1] + 1,
                         diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

absl::StatusOr<double> TokenAgreement(std::span<const TokenList> annotations) {
  if (absl::Status s = CheckAnnotations(annotations); !s.ok()) return s;
  size_t length = 0;
  for (const TokenList& a : annotations) length = std::max(length, a.size());
  if (length == 0) return 100.0;
  double sum = 0;
  for (size_t pos = 0; pos < length; ++pos) {
    std::map<std::optional<std::string>, size_t> counts;
    size_t modal = 0;
    for (const TokenList& a : annotations) {
      std::optional<std::string> token;
      if (pos < a.size()) token = a[pos];
      modal = std::max(modal, ++counts[token]);
    }
    sum += static_cast<double>(modal) / annotations.size();
  }
  return 100.0 * sum / length;
}

absl::StatusOr<double> FullAgreement(std::span<const TokenList> annotations) {
  if (absl::Status s = CheckAnnotations(annotations); !s.ok()) return s;
  // First-seen order; strictly greater counts replace the mode.
  std::vector<std::pair<const TokenList*, size_t>> classes;
  for (const TokenList& a : annotations) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const auto& c) { return *c.first == a; });
    if (it == classes.end()) {
      classes.emplace_back(&a, 1);
    } else {
      ++it->second;
    }
  }
  size_t modal = 0;
  for (const auto& c : classes) {
    if (c.second > modal) modal = c.second;
  }
  return 100.0 * static_cast<double>(modal) / annotations.size();
}

absl::StatusOr<CompareSummary> CompareTexts(
    std::span<const std::string> hypotheses,
    std::span<const std::vector<std::string>> references) {
  if (hypotheses.size() != references.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat(hypotheses.size(), " hypotheses but ", references.size(),
                     " reference sets"));
  }
  if (hypotheses.empty()) return absl::InvalidArgumentError("nothing to compare");
  CompareSummary summary;
  summary.examples = hypotheses.size();
  std::vector<TokenList> hyp_tokens;
  std::vector<std::vector<TokenList>> ref_tokens;
  for (size_t i = 0; i < hypotheses.size(); ++i) {
    hyp_tokens.push_back(MetricTokens(hypotheses[i]));
    if (hyp_tokens.back().empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("hypothesis ", i + 1, " is empty"));
    }
    std::vector<TokenList> refs;
    for (const std::string& ref : references[i]) {
      refs.push_back(MetricTokens(ref));
      if (refs.back().empty()) {
        return absl::InvalidArgumentError(
            absl::StrCat("reference for example ", i + 1, " is empty"));
      }
    }
    if (refs.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("no reference for example ", i + 1));
    }
    ref_tokens.push_back(std::move(refs));
  }

  absl::StatusOr<double> corpus = CorpusBleu(hyp_tokens, ref_tokens);
  if (!corpus.ok()) return corpus.status();
  summary.corpus_bleu = *corpus;
  for (size_t i = 0; i < hyp_tokens.size(); ++i) {
    ExampleScores scores;
    absl::StatusOr<double> bleu = SentenceBleu(hyp_tokens[i], ref_tokens[i]);
    if (!bleu.ok()) return bleu.status();
    scores.bleu = *bleu;
    const TokenList& ref = ref_tokens[i].front();
    std::array<std::pair<RougeVariant, double*>, 4> rouges = {{
        {RougeVariant::kRouge1, &scores.rouge1},
        {RougeVariant::kRouge2, &scores.rouge2},
        {RougeVariant::kRougeL, &scores.rouge_l},
        {RougeVariant::kRougeLsum, &scores.rouge_lsum},
    }};
    for (auto [variant, out] : rouges) {
      absl::StatusOr<RougeScore> r = Rouge(hyp_tokens[i], ref, variant);
      if (!r.ok()) return r.status();
      *out = r->f1;
    }
    scores.levenshtein = WordLevenshtein(hyp_tokens[i], ref);
    summary.mean_sentence_bleu += scores.bleu;
    summary.rouge1 += scores.rouge1;
    summary.rouge2 += scores.rouge2;
    summary.rouge_l += scores.rouge_l;
    summary.rouge_lsum += scores.rouge_lsum;
    summary.mean_levenshtein += static_cast<double>(scores.levenshtein);
    summary.per_example.push_back(scores);
  }
  const double n = static_cast<double>(summary.examples);
  summary.mean_sentence_bleu /= n;
  summary.rouge1 /= n;
  summary.rouge2 /= n;
  summary.rouge_l /= n;
  summary.rouge_lsum /= n;
  summary.mean_levenshtein /= n;
  return summary;
}

}  // namespace perturbkit
