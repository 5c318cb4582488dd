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


// Acceptance checks. Prints one "criterion N: PASS|FAIL (...)" line per
// criterion and exits non-zero if any selected criterion fails.
//
//   perturbkit_acceptance [--criterion N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "perturbkit/augment.h"
#include "perturbkit/candidates.h"
#include "perturbkit/corpus.h"
#include "perturbkit/entities.h"
#include "perturbkit/errors.h"
#include "perturbkit/external_perturber.h"
#include "perturbkit/fairscore.h"
#include "perturbkit/heuristic_perturber.h"
#include "perturbkit/metrics.h"
#include "perturbkit/parallel.h"
#include "perturbkit/perturber.h"
#include "perturbkit/resources.h"
#include "perturbkit/scoring.h"
#include "perturbkit/tokenizer.h"
#include "classifiers.h"
#include "metric_oracles.h"
#include "stub_server.h"
#include "synthetic.h"

namespace perturbkit {
namespace {

using Clock = std::chrono::steady_clock;
using Map = std::unordered_map<std::string, std::string>;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void Check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const Resources& Res() {
  static const Resources* resources = [] {
    auto loaded = LoadResources(DefaultDataDir());
    if (!loaded.ok()) {
      std::cerr << "cannot load resources: " << loaded.status() << "\n";
      std::exit(2);
    }
    return new Resources(*std::move(loaded));
  }();
  return *resources;
}

absl::StatusOr<PerturbResult> PerturbWith(const Perturber& engine,
                                          const std::string& text,
                                          const std::string& word,
                                          Attribute target) {
  auto request = BuildRequest(Res().lexicon, text, word, target);
  if (!request.ok()) return request.status();
  return engine.Perturb(*request);
}

// ---------------------------------------------------------------------------
// 1. Golden corpus.

Outcome GoldenCorpus() {
  Outcome out;
  const auto start = Clock::now();
  const Resources& r = Res();
  HeuristicPerturber guarded(&r.lexicon, &r.names, HeuristicMode::kGuarded);
  HeuristicPerturber naive(&r.lexicon, &r.names, HeuristicMode::kNaive);
  std::ifstream in(PERTURBKIT_TEST_DATA_DIR "/golden_perturbations.jsonl");
  std::string line;
  size_t total = 0, guarded_ok = 0, naive_total = 0, naive_ok = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json c = nlohmann::json::parse(line);
    ++total;
    auto target = ParseAxisAttribute(c["target"].get<std::string>());
    if (!target.ok()) {
      out.Check(false, c["id"].get<std::string>() + ": bad target");
      continue;
    }
    const std::string text = c["text"], word = c["word"];
    auto g = PerturbWith(guarded, text, word, *target);
    if (g.ok() && g->text == c["expected"].get<std::string>()) {
      ++guarded_ok;
    } else {
      out.failures.push_back(c["id"].get<std::string>() + " guarded");
    }
    if (c.contains("expected_naive")) {
      ++naive_total;
      auto n = PerturbWith(naive, text, word, *target);
      if (n.ok() && n->text == c["expected_naive"].get<std::string>()) {
        ++naive_ok;
      } else {
        out.failures.push_back(c["id"].get<std::string>() + " naive");
      }
    }
  }
  const double seconds = Seconds(start);
  out.pass = total >= 50 && guarded_ok >= 45 && naive_total >= 5 &&
             naive_ok == naive_total && seconds < 1.0;
  out.detail = absl::StrFormat(
      "guarded %d/%d exact, naive failures reproduced %d/%d, %.3f s", guarded_ok,
      total, naive_ok, naive_total, seconds);
  return out;
}

// ---------------------------------------------------------------------------
// 2. Augmentation invariants.

std::string RecordsBytes(const std::vector<AugmentationRecord>& records) {
  std::string bytes;
  for (const AugmentationRecord& record : records) {
    bytes += RecordToJson(record).dump();
    bytes += '\n';
  }
  return bytes;
}

Outcome AugmentInvariants() {
  Outcome out;
  const Resources& r = Res();
  HeuristicPerturber engine(&r.lexicon, &r.names, HeuristicMode::kGuarded);
  std::mt19937_64 rng(2);
  size_t passed = 0, snippets = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const size_t n = trial % 40 == 0 ? 10000 : 1 + rng() % 1000;
    const std::vector<Example> examples = testing::RandomDataset(rng, n);
    snippets += n;
    AugmentOptions options;
    options.seed = rng();
    auto serial = AugmentDataset(examples, r, engine, options);
    options.workers = 8;
    auto parallel = AugmentDataset(examples, r, engine, options);
    bool ok = serial.ok() && parallel.ok();
    if (ok) {
      const auto& records = serial->records;
      ok = records.size() == examples.size();
      for (size_t i = 0; ok && i < records.size(); ++i) {
        const AugmentationRecord& record = records[i];
        const Example& example = examples[i];
        ok = record.id == example.id && record.label == example.label &&
             record.original_segments == example.segments &&
             record.perturbed_segments.size() == example.segments.size();
        if (record.status != RecordStatus::kOk) {
          ok = ok && !record.changed &&
               record.perturbed_segments == example.segments;
        }
        auto joined = JoinSegments(example.segments);
        if (ok && joined.ok() && FindCandidates(*joined, r.lexicon).empty()) {
          ok = record.status == RecordStatus::kNoCandidates;
        }
      }
      ok = ok && RecordsBytes(records) == RecordsBytes(parallel->records);
    }
    out.Check(ok, absl::StrCat("trial ", trial));
    passed += ok ? 1 : 0;
  }
  out.detail = absl::StrFormat("%d/%d fuzz trials, %d snippets", passed,
                               trials, snippets);
  return out;
}

// ---------------------------------------------------------------------------
// 3. Perturbability against a brute-force re-evaluation.

bool Capitalized(const Token& t) {
  return t.capitalization == Capitalization::kTitle ||
         t.capitalization == Capitalization::kUpper;
}

// Entity mentions: maximal runs of entity-like tokens.
size_t OracleMentions(const std::vector<Token>& tokens) {
  const Resources& r = Res();
  auto base = [&](size_t i) {
    const Token& t = tokens[i];
    if (!t.is_word()) return false;
    if (Capitalized(t) && r.names.Contains(t.text)) return true;
    return t.capitalization == Capitalization::kTitle && !t.sentence_initial &&
           !r.stopwords.Contains(t.text);
  };
  std::vector<bool> marked(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) marked[i] = base(i);
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (!marked[i] && base(i + 1) && t.is_word() && t.sentence_initial &&
        t.capitalization == Capitalization::kTitle &&
        !r.stopwords.Contains(t.text)) {
      marked[i] = true;
    }
  }
  size_t runs = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (marked[i] && (i == 0 || !marked[i - 1])) ++runs;
  }
  return runs;
}

// Word-list hits: per axis, a left-to-right longest-match scan over every
// lexicon entry; hits are the distinct start positions across axes.
size_t OracleHits(const std::vector<Token>& tokens) {
  const Lexicon& lexicon = Res().lexicon;
  std::vector<std::string> lower;
  for (const Token& t : tokens) lower.push_back(AsciiLower(t.text));
  std::set<size_t> starts;
  for (Axis axis : kAllAxes) {
    size_t pos = 0;
    while (pos < tokens.size()) {
      size_t longest = 0;
      if (tokens[pos].is_word()) {
        for (const LexiconEntry& e : lexicon.entries()) {
          if (e.axis != axis || pos + e.pattern.size() > tokens.size()) continue;
          if (!std::equal(e.pattern.begin(), e.pattern.end(),
                          lower.begin() + pos)) {
            continue;
          }
          if (e.category == Category::kName && !Capitalized(tokens[pos])) {
            continue;
          }
          longest = std::max(longest, e.pattern.size());
        }
      }
      if (longest > 0) {
        starts.insert(pos);
        pos += longest;
      } else {
        ++pos;
      }
    }
  }
  return starts.size();
}

std::string FuzzSnippet(std::mt19937_64& rng) {
  static const std::vector<std::string> extra = {
      "Queen", "Victoria", "Paris", "The", "And", "SUE", "sue", "Jamal",
      "Grace", "NASA", "McDonald", "Dr.", "!", ".", "Mr", "Old", "New", "York",
      "elderly", "Black", "WOMEN", "Her", "She"};
  std::string out;
  const int n = 1 + static_cast<int>(rng() % 30);
  for (int i = 0; i < n; ++i) {
    if (!out.empty()) out += ' ';
    switch (rng() % 3) {
      case 0:
        out += extra[rng() % extra.size()];
        break;
      case 1:
        out += testing::DemographicWords()[rng() %
                                           testing::DemographicWords().size()];
        break;
      default:
        out += testing::NeutralWords()[rng() % testing::NeutralWords().size()];
    }
  }
  return out;
}

Outcome PerturbabilityOracle() {
  Outcome out;
  const Resources& r = Res();
  const std::vector<std::pair<int, int>> weights = {{1, 1}, {2, 3}, {0, 1},
                                                    {1, 0}};
  std::mt19937_64 rng(3);
  size_t agree = 0;
  const int trials = 1000;
  for (int trial = 0; trial < trials; ++trial) {
    const std::string text = FuzzSnippet(rng);
    const std::vector<Token> tokens = Tokenize(text);
    const size_t mentions = OracleMentions(tokens);
    const size_t hits = OracleHits(tokens);
    bool ok = true;
    for (const auto& [m0, m1] : weights) {
      auto detail = PerturbabilityDetail(tokens, r.lexicon, r.names,
                                         r.stopwords, {double(m0), double(m1)});
      // Same numerator and denominator means the same rational.
      ok = ok && detail.ok() && detail->entity_mentions == mentions &&
           detail->dictionary_hits == hits &&
           detail->token_count == tokens.size() &&
           detail->score ==
               static_cast<double>(m0 * mentions + m1 * hits) / tokens.size();
    }
    out.Check(ok, absl::StrCat("\"", text, "\""));
    agree += ok ? 1 : 0;
  }
  const std::vector<Token> women = Tokenize("women like shopping");
  auto score =
      Perturbability(women, r.lexicon, r.names, r.stopwords, {1.0, 1.0});
  const bool third = score.ok() && *score == 1.0 / 3.0;
  out.Check(third, "women like shopping != 1/3");
  out.detail = absl::StrFormat(
      "%d/%d fuzzed snippets equal to the oracle, 'women like shopping' = %s",
      agree, trials, score.ok() ? absl::StrFormat("%.6f", *score) : "error");
  return out;
}

// ---------------------------------------------------------------------------
// 4. Fairscore.

std::vector<std::string> Ids(int n) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("id" + std::to_string(i));
  return ids;
}

bool HasHe(const std::string& text) {
  std::string word;
  for (size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ' ';
    if (std::isalnum(static_cast<unsigned char>(c))) {
      word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      if (word == "he") return true;
      word.clear();
    }
  }
  return false;
}

Outcome FairscoreSuite() {
  Outcome out;
  {
    Map same;
    for (const std::string& id : Ids(25)) same[id] = id.back() == '3' ? "a" : "b";
    auto report = ComputeFairscore(same, same, Ids(25));
    out.Check(report.ok() && report->score == 0.0, "identical predictions");
  }
  const std::vector<std::pair<int, std::vector<int>>> cases = {
      {1, {}},           {1, {0}},        {2, {1}},         {3, {0, 2}},
      {4, {0, 1, 2, 3}}, {5, {4}},        {6, {0, 3}},      {7, {1, 2, 5}},
      {8, {7}},          {9, {0, 4, 8}},  {10, {}},         {11, {10}},
      {12, {0, 6}},      {13, {1, 5, 9}}, {16, {15}},       {20, {0, 19}},
      {25, {3, 4, 5}},   {30, {29}},      {40, {0, 10, 20, 30}},
      {64, {63}}};
  int hand_ok = 0;
  for (const auto& [n, flips] : cases) {
    Map a, b;
    const std::vector<std::string> ids = Ids(n);
    for (const std::string& id : ids) a[id] = b[id] = "keep";
    for (int i : flips) b[ids[i]] = "flip";
    auto report = ComputeFairscore(a, b, ids);
    const bool ok =
        report.ok() && report->score == static_cast<double>(flips.size()) / n;
    hand_ok += ok;
    out.Check(ok, absl::StrCat("hand case n=", n));
  }

  // Fixture classifiers over a heuristically perturbed eval set.
  const Resources& r = Res();
  std::mt19937_64 rng(44);
  const std::vector<std::string> sentiment = {"good", "bad", "great",
                                              "terrible", "rude", "delicious"};
  std::vector<Example> examples;
  for (int i = 0; i < 1000; ++i) {
    std::string text = testing::RandomSnippet(rng, 12, 3);
    text += " and it was " + sentiment[rng() % sentiment.size()];
    examples.push_back({"e" + std::to_string(i), {text}, nullptr});
  }
  HeuristicPerturber engine(&r.lexicon, &r.names, HeuristicMode::kGuarded);
  AugmentOptions options;
  options.seed = 44;
  auto result = AugmentDataset(examples, r, engine, options);
  double blind_score = -1;
  size_t he_numerator = 0, he_oracle = 0, eval_size = 0;
  if (result.ok()) {
    Map blind_a, blind_b, he_a, he_b;
    for (const AugmentationRecord& rec : result->records) {
      const std::string orig = absl::StrJoin(rec.original_segments, " ");
      const std::string pert = absl::StrJoin(rec.perturbed_segments, " ");
      blind_a[rec.id] = testing::DemographicBlind(orig);
      blind_b[rec.id] = testing::DemographicBlind(pert);
      he_a[rec.id] = testing::HeDetector(orig);
      he_b[rec.id] = testing::HeDetector(pert);
      if (rec.changed && rec.status == RecordStatus::kOk) {
        ++eval_size;
        he_oracle += HasHe(orig) != HasHe(pert);
      }
    }
    auto blind =
        ComputeFairscoreForRecords(blind_a, blind_b, result->records);
    auto he = ComputeFairscoreForRecords(he_a, he_b, result->records);
    out.Check(blind.ok() && blind->score == 0.0, "demographic-blind != 0");
    if (blind.ok()) blind_score = blind->score;
    out.Check(he.ok() && he->numerator == he_oracle &&
                  he->denominator == eval_size && he_oracle > 0,
              "he-detector differs from oracle");
    if (he.ok()) he_numerator = he->numerator;
  } else {
    out.Check(false, "augmentation failed");
  }

  int symmetric = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 40);
    const std::vector<std::string> ids = Ids(n);
    Map a, b;
    for (const std::string& id : ids) {
      a[id] = std::to_string(rng() % 3);
      b[id] = std::to_string(rng() % 3);
    }
    auto ab = ComputeFairscore(a, b, ids);
    auto ba = ComputeFairscore(b, a, ids);
    const bool ok = ab.ok() && ba.ok() && ab->score == ba->score &&
                    ab->score >= 0.0 && ab->score <= 1.0;
    symmetric += ok;
    out.Check(ok, absl::StrCat("symmetry trial ", trial));
  }
  out.detail = absl::StrFormat(
      "hand cases %d/20, blind classifier %.4f, he-detector %d/%d vs oracle "
      "%d/%d, symmetry+bounds %d/1000",
      hand_ok, blind_score, he_numerator, eval_size, he_oracle, eval_size,
      symmetric);
  return out;
}

// ---------------------------------------------------------------------------
// 5. Metric oracles and axioms.

Outcome MetricOracles() {
  Outcome out;
  std::mt19937_64 rng(5);
  int lev_ok = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const TokenList a = testing::RandomTokens(rng, 0, 20, 5);
    const TokenList b = testing::RandomTokens(rng, 0, 20, 5);
    const bool ok = WordLevenshtein(a, b) == testing::OracleLevenshtein(a, b);
    lev_ok += ok;
    out.Check(ok, absl::StrCat("levenshtein pair ", trial));
  }

  const TokenList text = MetricTokens("the cat sat on the mat . it purred .");
  const std::vector<TokenList> self = {text};
  out.Check(std::abs(*SentenceBleu(text, self) - 100.0) <= 1e-9,
            "BLEU identity");
  for (RougeVariant v : {RougeVariant::kRouge1, RougeVariant::kRouge2,
                         RougeVariant::kRougeL, RougeVariant::kRougeLsum}) {
    out.Check(std::abs(Rouge(text, text, v)->f1 - 1.0) <= 1e-12,
              "ROUGE identity " + std::string(RougeVariantName(v)));
  }
  auto r2 = Rouge(MetricTokens("a b c d"), MetricTokens("a c d e"),
                  RougeVariant::kRouge2);
  const bool r2_ok = r2.ok() && std::abs(r2->f1 - 1.0 / 3.0) <= 1e-9;
  out.Check(r2_ok, "ROUGE-2 1/3 case");
  const std::vector<TokenList> annotations = {MetricTokens("a b c d e"),
                                              MetricTokens("a b c d e"),
                                              MetricTokens("a b c d x")};
  auto agreement = TokenAgreement(annotations);
  const bool agreement_ok =
      agreement.ok() && std::abs(*agreement - 280.0 / 3.0) <= 1e-9;
  out.Check(agreement_ok, "token agreement 93.33 case");

  int axioms = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const TokenList a = testing::RandomTokens(rng, 1, 12, 4);
    const TokenList b = testing::RandomTokens(rng, 1, 12, 4);
    const TokenList c = testing::RandomTokens(rng, 1, 12, 4);
    const size_t ab = WordLevenshtein(a, b);
    bool ok = ab == WordLevenshtein(b, a) &&
              WordLevenshtein(a, c) <= ab + WordLevenshtein(b, c) &&
              (ab == 0) == (a == b) && ab <= std::max(a.size(), b.size());
    for (RougeVariant v : {RougeVariant::kRouge1, RougeVariant::kRouge2,
                           RougeVariant::kRougeL}) {
      const RougeScore x = *Rouge(a, b, v);
      const RougeScore y = *Rouge(b, a, v);
      ok = ok && std::abs(x.f1 - y.f1) <= 1e-12 && x.f1 >= 0 && x.f1 <= 1;
    }
    const RougeScore lsum = *Rouge(a, b, RougeVariant::kRougeLsum);
    ok = ok && lsum.f1 >= 0 && lsum.f1 <= 1;
    const std::vector<TokenList> refs = {b};
    const double bleu = *SentenceBleu(a, refs);
    ok = ok && bleu >= 0 && bleu <= 100.0 + 1e-9 &&
         std::abs(bleu - testing::OracleSentenceBleu(a, refs)) <= 1e-9;
    const std::vector<TokenList> pair = {a, b};
    const double agree = *TokenAgreement(pair);
    ok = ok && agree >= 50.0 && agree <= 100.0;
    axioms += ok;
    out.Check(ok, absl::StrCat("axiom trial ", trial));
  }
  out.detail = absl::StrFormat(
      "levenshtein %d/10000 vs DP oracle, ROUGE-2 case %s, agreement %.9f, "
      "axiom trials %d/1000",
      lev_ok, r2_ok ? "ok" : "wrong", agreement.ok() ? *agreement : -1.0,
      axioms);
  return out;
}

// ---------------------------------------------------------------------------
// 6. Sampling law.

Outcome SamplingLaw() {
  Outcome out;
  const std::string text = "she is Asian";
  auto pairs = PairSelection::Parse(
      "gender:woman>man,gender:woman>non-binary,race:asian>white");
  const std::vector<Token> tokens = Tokenize(text);
  const std::vector<CandidateItem> items =
      BuildCandidateSet(text, tokens, Res().lexicon, *pairs);
  out.Check(items.size() == 3, "candidate set size != 3");
  std::mt19937_64 rng(2024);
  std::map<std::pair<std::string, Attribute>, int> counts;
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) {
    auto pick = SampleCandidate(items, rng, SamplingStrategy{});
    if (pick) ++counts[{pick->word.surface, pick->target}];
  }
  std::vector<std::string> shares;
  for (const auto& [key, count] : counts) {
    const double share = static_cast<double>(count) / draws;
    out.Check(std::abs(share - 1.0 / 3.0) <= 0.02,
              absl::StrCat(key.first, " share ", share));
    shares.push_back(absl::StrFormat("%.4f", share));
  }
  out.Check(counts.size() == 3, "not every item drawn");
  out.detail = absl::StrCat("shares ", absl::StrJoin(shares, " "),
                            " over 30000 draws");
  return out;
}

// ---------------------------------------------------------------------------
// 7. Throughput.

Outcome Throughput() {
  Outcome out;
  const Resources& r = Res();
  std::mt19937_64 rng(7);
  std::vector<Example> examples;
  examples.reserve(100000);
  size_t tokens = 0;
  for (int i = 0; i < 100000; ++i) {
    std::string text = testing::RandomSnippet(rng, 50, 8);
    tokens += Tokenize(text).size();
    examples.push_back({"s" + std::to_string(i), {std::move(text)}, nullptr});
  }
  HeuristicPerturber engine(&r.lexicon, &r.names, HeuristicMode::kGuarded);
  AugmentOptions options;
  options.seed = 7;
  auto start = Clock::now();
  auto serial = AugmentDataset(examples, r, engine, options);
  const double t1 = Seconds(start);
  options.workers = 4;
  start = Clock::now();
  auto parallel = AugmentDataset(examples, r, engine, options);
  const double t4 = Seconds(start);
  const double efficiency = t1 / (4.0 * t4);
  const unsigned cpus = std::thread::hardware_concurrency();
  out.Check(serial.ok() && parallel.ok(), "augmentation failed");
  out.Check(t1 < 60.0, "single worker over 60 s");
  out.Check(efficiency >= 0.8, "4-worker scaling below 80% of ideal");
  out.detail = absl::StrFormat(
      "100000 snippets, %.1f tokens avg; 1 worker %.2f s; 4 workers %.2f s; "
      "scaling efficiency %.0f%% (need >= 80%%); %d hardware threads",
      static_cast<double>(tokens) / examples.size(), t1, t4,
      100.0 * efficiency, cpus);
  return out;
}

// ---------------------------------------------------------------------------
// 8. External protocol.

ExternalConfig StubConfig(std::vector<std::string> extra) {
  ExternalConfig config;
  config.transport = TransportKind::kStdio;
  config.command = {PERTURBKIT_STUB_PATH, "--transport", "stdio"};
  config.command.insert(config.command.end(), extra.begin(), extra.end());
  config.timeout = std::chrono::milliseconds(5000);
  config.max_retries = 0;
  config.max_in_flight = 16;
  return config;
}

Outcome ExternalProtocol() {
  Outcome out;
  size_t violations = 0;
  const size_t n = 10000;
  {
    auto engine =
        ExternalPerturber::Create(StubConfig({"--mode", "echo", "--reorder", "8"}));
    if (!engine.ok()) {
      out.Check(false, "stub failed to start");
      return out;
    }
    std::vector<std::string> replies(n);
    ParallelFor(n, 16, [&](size_t i) {
      auto reply = (*engine)->Complete(absl::StrCat("request ", i, " payload"));
      replies[i] = reply.ok() ? *reply : reply.status().ToString();
    });
    for (size_t i = 0; i < n; ++i) {
      violations += replies[i] != absl::StrCat("request ", i, " payload");
    }
    out.Check(violations == 0, absl::StrCat(violations, " correlation errors"));
  }

  // Canned responses through the full perturb path.
  const std::string canned_path = "/tmp/perturbkit_acceptance_canned.jsonl";
  {
    std::ofstream canned(canned_path);
    canned << R"({"input":"women man <PERT_SEP> women like shopping",)"
           << R"("output":"men like shopping"})" << "\n";
  }
  auto canned = ExternalPerturber::Create(
      StubConfig({"--mode", "canned", "--canned", canned_path}));
  bool canned_ok = false;
  if (canned.ok()) {
    auto result = PerturbWith(**canned, "women like shopping", "women",
                              Attribute::kMan);
    canned_ok = result.ok() && result->text == "men like shopping" &&
                result->edits.size() == 1;
  }
  std::remove(canned_path.c_str());
  out.Check(canned_ok, "canned round trip");

  // Injected faults map to typed errors.
  std::vector<std::string> typed;
  auto expect_kind = [&](const ExternalPerturber& engine,
                         const std::string& input, EngineErrorKind kind,
                         const std::string& name) {
    auto reply = engine.Complete(input);
    const bool ok = !reply.ok() && EngineErrorKindOf(reply.status()) == kind &&
                    ExitCodeFor(reply.status()) == kExitEngine;
    out.Check(ok, name);
    if (ok) typed.push_back(name);
  };
  ExternalConfig fast = StubConfig({"--mode", "echo"});
  fast.timeout = std::chrono::milliseconds(200);
  auto faults = ExternalPerturber::Create(fast);
  if (faults.ok()) {
    expect_kind(**faults, "x __slow__", EngineErrorKind::kTimeout, "timeout");
    expect_kind(**faults, "x __garbage__", EngineErrorKind::kMalformedResponse,
                "malformed");
    expect_kind(**faults, "x __corrupt__", EngineErrorKind::kMalformedResponse,
                "corrupt");
    expect_kind(**faults, "x __die__", EngineErrorKind::kConnectionRefused,
                "connection-refused");
  }

  // HTTP transport against the in-process stub.
  size_t http_ok = 0;
  StubOptions options;
  options.mode = StubMode::kEcho;
  auto responder = StubResponder::Create(options);
  if (responder.ok()) {
    StubHttpServer server(responder->get());
    auto port = server.Start("127.0.0.1", 0);
    if (port.ok()) {
      ExternalConfig config;
      config.transport = TransportKind::kHttp;
      config.port = *port;
      config.timeout = std::chrono::milliseconds(2000);
      config.max_retries = 0;
      auto engine = ExternalPerturber::Create(config);
      if (engine.ok()) {
        std::vector<int> good(1000);
        ParallelFor(good.size(), 4, [&](size_t i) {
          auto reply = (*engine)->Complete(absl::StrCat("h", i));
          good[i] = reply.ok() && *reply == absl::StrCat("h", i);
        });
        for (int g : good) http_ok += g;
      }
      server.Stop();
    }
  }
  out.Check(http_ok == 1000, "http round trips");
  out.detail = absl::StrFormat(
      "stdio %d requests with reordered replies, %d correlation errors; "
      "canned %s; typed errors [%s]; http %d/1000",
      n, violations, canned_ok ? "ok" : "wrong", absl::StrJoin(typed, ", "),
      http_ok);
  return out;
}

// ---------------------------------------------------------------------------
// 9. Round trips.

Outcome RoundTrips() {
  Outcome out;
  std::mt19937_64 rng(9);
  int joins = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::string> segments(2 + rng() % 4);
    for (std::string& s : segments) {
      s = testing::RandomSnippet(rng, static_cast<int>(rng() % 20), 3);
      if (rng() % 5 == 0) s = " " + s + " ";
    }
    auto joined = JoinSegments(segments);
    bool ok = joined.ok();
    if (ok) {
      auto split = SplitSegments(*joined, segments.size());
      ok = split.ok() && *split == segments;
    }
    joins += ok;
    out.Check(ok, absl::StrCat("join/split trial ", trial));
  }

  const Resources& r = Res();
  HeuristicPerturber engine(&r.lexicon, &r.names, HeuristicMode::kGuarded);
  const std::vector<std::string> filler = {
      "went", "to", "the", "store", "and", "saw", "a", "tree", "quickly",
      "then", "blue", "table", "said", ",", ".", "it", "was", "green"};
  const std::vector<std::string> pronouns = {"she", "She", "herself"};
  int genders = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::string> words;
    const int n = 2 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      words.push_back(rng() % 3 == 0 ? pronouns[rng() % pronouns.size()]
                                     : filler[rng() % filler.size()]);
    }
    words.push_back("herself");
    const std::string text = absl::StrJoin(words, " ");
    auto forward = PerturbWith(engine, text, "herself", Attribute::kMan);
    bool ok = forward.ok() && forward->text != text;
    if (ok) {
      auto back =
          PerturbWith(engine, forward->text, "himself", Attribute::kWoman);
      ok = back.ok() && back->text == text;
    }
    genders += ok;
    out.Check(ok, "\"" + text + "\"");
  }

  const std::string serialized = r.lexicon.Serialize();
  auto reloaded = Lexicon::Parse(serialized);
  const bool lexicon_ok = reloaded.ok() &&
                          reloaded->size() == r.lexicon.size() &&
                          reloaded->Serialize() == serialized;
  out.Check(lexicon_ok, "lexicon serialize/load");
  out.detail = absl::StrFormat(
      "join/split %d/1000, pronoun-only gender round trip %d/1000, lexicon "
      "(%d entries) %s",
      joins, genders, r.lexicon.size(), lexicon_ok ? "identical" : "differs");
  return out;
}

}  // namespace
}  // namespace perturbkit

int main(int argc, char** argv) {
  CLI::App app("perturbkit acceptance checks");
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-9)")
      ->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  using perturbkit::Outcome;
  const std::vector<std::function<Outcome()>> checks = {
      perturbkit::GoldenCorpus,         perturbkit::AugmentInvariants,
      perturbkit::PerturbabilityOracle, perturbkit::FairscoreSuite,
      perturbkit::MetricOracles,        perturbkit::SamplingLaw,
      perturbkit::Throughput,           perturbkit::ExternalProtocol,
      perturbkit::RoundTrips};
  bool all = true;
  for (size_t i = 0; i < checks.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    const Outcome outcome = checks[i]();
    all = all && outcome.pass;
    std::cout << "criterion " << i + 1 << ": "
              << (outcome.pass ? "PASS" : "FAIL") << " (" << outcome.detail
              << ")\n";
    for (const std::string& failure : outcome.failures) {
      std::cout << "  failed: " << failure << "\n";
    }
    std::cout.flush();
  }
  return all ? 0 : 1;
}
