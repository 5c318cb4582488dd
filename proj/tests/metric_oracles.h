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


// Straightforward reference implementations used to cross-check the metrics.

#ifndef PERTURBKIT_TESTS_METRIC_ORACLES_H_
#define PERTURBKIT_TESTS_METRIC_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace perturbkit::testing {

using Tokens = std::vector<std::string>;

// Full-table edit distance with unit costs.
inline size_t OracleLevenshtein(const Tokens& a, const Tokens& b) {
  std::vector<std::vector<size_t>> d(a.size() + 1,
                                     std::vector<size_t>(b.size() + 1, 0));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  return d[a.size()][b.size()];
}

inline std::map<Tokens, int> OracleNgrams(const Tokens& tokens, size_t n) {
  std::map<Tokens, int> counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Tokens(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

// Sentence BLEU: clipped n-gram precision up to order 4, exponential
// smoothing for zero counts, effective order, closest reference length.
inline double OracleSentenceBleu(const Tokens& hyp,
                                 const std::vector<Tokens>& refs) {
  double correct[4] = {0, 0, 0, 0};
  double total[4] = {0, 0, 0, 0};
  for (size_t n = 1; n <= 4; ++n) {
    const std::map<Tokens, int> hyp_counts = OracleNgrams(hyp, n);
    std::map<Tokens, int> max_ref;
    for (const Tokens& ref : refs) {
      for (const auto& [gram, count] : OracleNgrams(ref, n)) {
        max_ref[gram] = std::max(max_ref[gram], count);
      }
    }
    for (const auto& [gram, count] : hyp_counts) {
      total[n - 1] += count;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) correct[n - 1] += std::min(count, it->second);
    }
  }
  size_t ref_len = refs[0].size();
  for (const Tokens& ref : refs) {
    const long diff = std::labs(static_cast<long>(ref.size()) -
                                static_cast<long>(hyp.size()));
    const long best = std::labs(static_cast<long>(ref_len) -
                                static_cast<long>(hyp.size()));
    if (diff < best || (diff == best && ref.size() < ref_len)) {
      ref_len = ref.size();
    }
  }
  if (correct[0] + correct[1] + correct[2] + correct[3] == 0) return 0.0;
  double log_sum = 0;
  int order = 0;
  double smooth = 1;
  for (int n = 0; n < 4; ++n) {
    if (total[n] == 0) break;
    order = n + 1;
    double p;
    if (correct[n] == 0) {
      smooth *= 2;
      p = 100.0 / (smooth * total[n]);
    } else {
      p = 100.0 * correct[n] / total[n];
    }
    log_sum += std::log(p);
  }
  const double hyp_len = static_cast<double>(hyp.size());
  const double bp =
      hyp_len < ref_len ? std::exp(1.0 - ref_len / hyp_len) : 1.0;
  return bp * std::exp(log_sum / order);
}

// Tokens drawn from a small vocabulary so n-grams collide often.
template <typename Rng>
Tokens RandomTokens(Rng& rng, int min_len, int max_len, int vocab_size) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::uniform_int_distribution<int> word(0, vocab_size - 1);
  Tokens tokens(len(rng));
  for (std::string& token : tokens) token = "w" + std::to_string(word(rng));
  return tokens;
}

}  // namespace perturbkit::testing

#endif  // PERTURBKIT_TESTS_METRIC_ORACLES_H_
