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

#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "perturbkit/heuristic_perturber.h"
#include "perturbkit/perturber.h"
#include "perturbkit/string_util.h"
#include "perturbkit/tokenizer.h"
#include "test_util.h"

namespace perturbkit {
namespace {

using ::perturbkit::testing::TestResources;
using ::testing::ElementsAre;

absl::StatusOr<PerturbResult> RunEngine(HeuristicMode mode, std::string_view text,
                                  std::string_view word, Attribute target,
                                  uint64_t seed = 0) {
  const Resources& r = TestResources();
  auto request = BuildRequest(r.lexicon, text, word, target);
  if (!request.ok()) return request.status();
  HeuristicPerturber engine(&r.lexicon, &r.names, mode, seed);
  return engine.Perturb(*request);
}

std::string Guarded(std::string_view text, std::string_view word,
                    Attribute target) {
  auto result = RunEngine(HeuristicMode::kGuarded, text, word, target);
  if (!result.ok()) return "ERROR: " + result.status().ToString();
  return result->text;
}

std::string Naive(std::string_view text, std::string_view word,
                  Attribute target) {
  auto result = RunEngine(HeuristicMode::kNaive, text, word, target);
  if (!result.ok()) return "ERROR: " + result.status().ToString();
  return result->text;
}

std::vector<std::string> Words(std::string_view text) {
  return absl::StrSplit(Sv(text), ' ', absl::SkipEmpty());
}

TEST(PerturbTest, WomenLikeShopping) {
  EXPECT_EQ(Guarded("women like shopping", "women", Attribute::kMan),
            "men like shopping");
}

TEST(PerturbTest, ArticleFollowsReplacement) {
  EXPECT_EQ(Guarded("A \"black Austin Powers?\"", "black", Attribute::kAsian),
            "An \"Asian Austin Powers?\"");
}

TEST(PerturbTest, SourceEqualTargetIsRejected) {
  const Resources& r = TestResources();
  auto request = BuildRequest(r.lexicon, "she left", "she", Attribute::kWoman);
  EXPECT_FALSE(request.ok());
}

TEST(PerturbTest, UnknownWord) {
  auto result = RunEngine(HeuristicMode::kGuarded, "the table is red", "table",
                    Attribute::kMan);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.status().code(), absl::StatusCode::kNotFound);
}

TEST(PerturbTest, WordMustOccur) {
  EXPECT_FALSE(
      RunEngine(HeuristicMode::kGuarded, "he left", "she", Attribute::kMan).ok());
}

TEST(PerturbTest, EditsReproduceText) {
  const std::string text = "unfortunately for her, I recently changed her schedule";
  auto result = RunEngine(HeuristicMode::kGuarded, text, "her", Attribute::kMan);
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->text, "unfortunately for him, I recently changed his schedule");
  EXPECT_EQ(ApplyEdits(text, result->edits), result->text);
  EXPECT_TRUE(ValidateEdits(text, result->edits).ok());
  ASSERT_EQ(result->edits.size(), 2u);
  EXPECT_EQ(result->edits[0].replacement, "him");
  EXPECT_EQ(result->edits[1].replacement, "his");
}

TEST(PronounCaseTest, RightContextRules) {
  const Lexicon& lexicon = TestResources().lexicon;
  const std::vector<std::string> schedule = {"schedule"};
  const std::vector<std::string> comma = {","};
  const std::vector<std::string> none;
  const std::vector<std::string> very_best = {"very", "best"};
  const std::vector<std::string> very_much = {"very", "much"};
  EXPECT_EQ(ResolvePronounCase(lexicon, "her", schedule),
            PronounCase::kPossessiveDeterminer);
  EXPECT_EQ(ResolvePronounCase(lexicon, "her", comma), PronounCase::kAccusative);
  EXPECT_EQ(ResolvePronounCase(lexicon, "her", none), PronounCase::kAccusative);
  EXPECT_EQ(ResolvePronounCase(lexicon, "her", very_best),
            PronounCase::kPossessiveDeterminer);
  EXPECT_EQ(ResolvePronounCase(lexicon, "her", very_much),
            PronounCase::kAccusative);
  EXPECT_EQ(ResolvePronounCase(lexicon, "hers", schedule),
            PronounCase::kPossessivePronoun);
  EXPECT_EQ(ResolvePronounCase(lexicon, "his", comma),
            PronounCase::kPossessivePronoun);
  EXPECT_EQ(ResolvePronounCase(lexicon, "his", schedule),
            PronounCase::kPossessiveDeterminer);
}

TEST(PronounCaseTest, TotalOverFuzzVocabulary) {
  const Lexicon& lexicon = TestResources().lexicon;
  const std::vector<std::string> vocabulary = {
      "schedule", ",", ".", "is", "to", "very", "much", "running", "lovely",
      "quickly", "own", "the", "", "friends", "wedding", "and", "?"};
  for (const std::string& pronoun : {"her", "his", "Her", "HIS"}) {
    for (const std::string& a : vocabulary) {
      for (const std::string& b : vocabulary) {
        const std::vector<std::string> context = {a, b};
        const PronounCase c = ResolvePronounCase(lexicon, pronoun, context);
        const std::vector<PronounCase> allowed =
            lexicon.PronounCases(AsciiLower(pronoun));
        EXPECT_NE(std::find(allowed.begin(), allowed.end(), c), allowed.end());
      }
    }
  }
}

TEST(AgreementTest, SingularTheyReinflects) {
  EXPECT_EQ(Guarded("the owner told us he is thinking", "he",
                    Attribute::kNonbinaryUnderspecified),
            "the owner told us they are thinking");
  EXPECT_EQ(Guarded("he always goes to the gym", "he",
                    Attribute::kNonbinaryUnderspecified),
            "they always go to the gym");
  EXPECT_EQ(Guarded("she has a car", "she", Attribute::kNonbinaryUnderspecified),
            "they have a car");
}

TEST(AgreementTest, FromTheyReinflects) {
  EXPECT_EQ(Guarded("they are happy and they have a car", "they",
                    Attribute::kWoman),
            "she is happy and she has a car");
}

TEST(AgreementTest, CapitalizationPreserved) {
  EXPECT_EQ(Guarded("She went home", "She", Attribute::kMan), "He went home");
}

TEST(AgreementTest, ArticlesOnEditedTokens) {
  std::vector<EditedToken> tokens(3);
  tokens[0].text = "A";
  tokens[0].capitalization = Capitalization::kTitle;
  tokens[1].text = "Asian";
  tokens[1].edited = true;
  tokens[2].text = "man";
  const std::vector<EditedToken> fixed = FixAgreementAndArticles(tokens);
  EXPECT_EQ(fixed[0].text, "An");
}

TEST(AgreementTest, NeedsAn) {
  EXPECT_TRUE(NeedsAn("Asian"));
  EXPECT_TRUE(NeedsAn("elderly"));
  EXPECT_TRUE(NeedsAn("18-year-old"));
  EXPECT_TRUE(NeedsAn("hour"));
  EXPECT_FALSE(NeedsAn("university"));
  EXPECT_FALSE(NeedsAn("one"));
  EXPECT_FALSE(NeedsAn("Black"));
  EXPECT_FALSE(NeedsAn("10-year-old"));
}

TEST(GuardTest, ColorTermBeforeObjectIsKept) {
  EXPECT_EQ(Guarded("the white pawn attacked the black bishop", "white",
                    Attribute::kAsian),
            "the white pawn attacked the black bishop");
  EXPECT_EQ(Naive("the white pawn attacked the black bishop", "white",
                  Attribute::kBlack),
            "the black pawn attacked the black bishop");
  EXPECT_TRUE(IsColorGuardNoun("shirts"));
  EXPECT_FALSE(IsColorGuardNoun("student"));
}

TEST(GuardTest, NeverEditsGuardedTermBeforeExclusionNoun) {
  const std::vector<std::string> nouns = {"shirt", "cat", "house", "coffee",
                                          "pawn", "car"};
  for (const std::string& color : {"white", "black"}) {
    for (const std::string& noun : nouns) {
      const std::string text = "the " + color + " " + noun +
                               " met a white student and a black student";
      auto result = RunEngine(HeuristicMode::kGuarded, text, color,
                        color == "white" ? Attribute::kHispanicLatino
                                         : Attribute::kAsian);
      ASSERT_TRUE(result.ok()) << result.status();
      for (const Edit& edit : result->edits) EXPECT_NE(edit.span.begin, 4u);
      EXPECT_EQ(result->text.substr(0, 5 + color.size() + noun.size()),
                text.substr(0, 5 + color.size() + noun.size()));
    }
  }
}

TEST(NaiveTest, ReproducesOverPerturbation) {
  EXPECT_EQ(Naive("she bent over to kiss her friends cheek before sliding in "
                  "next to her .",
                  "she", Attribute::kMan),
            "he bent over to kiss him friends cheek before sliding in next to "
            "him .");
  EXPECT_EQ(Guarded("she bent over to kiss her friends cheek before sliding in "
                    "next to her .",
                    "she", Attribute::kMan),
            "he bent over to kiss his friends cheek before sliding in next to "
            "him .");
}

TEST(NameTest, ReplacedDeterministicallyAndConsistently) {
  const std::string text = "Sue's restaurant was great and Sue knew it";
  auto first = RunEngine(HeuristicMode::kGuarded, text, "Sue", Attribute::kMan, 11);
  auto second = RunEngine(HeuristicMode::kGuarded, text, "Sue", Attribute::kMan, 11);
  ASSERT_TRUE(first.ok());
  ASSERT_TRUE(second.ok());
  EXPECT_EQ(first->text, second->text);
  ASSERT_EQ(first->edits.size(), 2u);
  EXPECT_EQ(first->edits[0].replacement, first->edits[1].replacement);
  const auto men = TestResources().names.Names(Axis::kGender, Attribute::kMan);
  EXPECT_NE(std::find(men.begin(), men.end(), first->edits[0].replacement),
            men.end());
  EXPECT_EQ(first->text.substr(first->edits[0].replacement.size(), 2), "'s");
}

TEST(NameTest, SeedChangesChoiceSomewhere) {
  const Resources& r = TestResources();
  HeuristicPerturber a(&r.lexicon, &r.names, HeuristicMode::kGuarded, 1);
  HeuristicPerturber b(&r.lexicon, &r.names, HeuristicMode::kGuarded, 2);
  int differ = 0;
  for (const std::string& name : r.names.Names(Axis::kGender, Attribute::kWoman)) {
    if (a.ReplacementName(name, Axis::kGender, Attribute::kMan) !=
        b.ReplacementName(name, Axis::kGender, Attribute::kMan)) {
      ++differ;
    }
  }
  EXPECT_GT(differ, 0);
}

// Filler words that carry no demographic signal.
const std::vector<std::string>& Filler() {
  static const auto* words = new std::vector<std::string>{
      "went", "to", "the", "store", "and", "saw", "a", "tree", "quickly",
      "then", "blue", "table", "said", ",", ".", "it", "was", "green"};
  return *words;
}

TEST(PropertyTest, MinimalEditsOnFuzzedSnippets) {
  const Resources& r = TestResources();
  const std::vector<std::string> terms = {"she", "her", "woman", "mother",
                                          "herself", "lady", "girl"};
  HeuristicPerturber engine(&r.lexicon, &r.names, HeuristicMode::kGuarded, 3);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> words;
    const int n = 3 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      words.push_back(rng() % 4 == 0 ? terms[rng() % terms.size()]
                                     : Filler()[rng() % Filler().size()]);
    }
    words.push_back("she");
    const std::string text = absl::StrJoin(words, " ");
    for (Attribute target : {Attribute::kMan, Attribute::kNonbinaryUnderspecified}) {
      auto request = BuildRequest(r.lexicon, text, "she", target);
      ASSERT_TRUE(request.ok()) << request.status();
      auto result = engine.Perturb(*request);
      ASSERT_TRUE(result.ok()) << result.status();
      ASSERT_TRUE(ValidateEdits(text, result->edits).ok());
      ASSERT_EQ(ApplyEdits(text, result->edits), result->text);
      // Outside the edits, every byte is unchanged.
      size_t cursor = 0;
      size_t out_cursor = 0;
      for (const Edit& edit : result->edits) {
        const size_t gap = edit.span.begin - cursor;
        ASSERT_EQ(text.substr(cursor, gap), result->text.substr(out_cursor, gap));
        out_cursor += gap + edit.replacement.size();
        cursor = edit.span.end;
      }
      ASSERT_EQ(text.substr(cursor), result->text.substr(out_cursor));
      // Determinism.
      auto again = engine.Perturb(*request);
      ASSERT_TRUE(again.ok());
      ASSERT_EQ(again->text, result->text);
    }
  }
}

TEST(PropertyTest, PronounOnlyGenderRoundTrip) {
  const Resources& r = TestResources();
  HeuristicPerturber engine(&r.lexicon, &r.names, HeuristicMode::kGuarded);
  const std::vector<std::string> pronouns = {"she", "herself", "She"};
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> words;
    const int n = 2 + static_cast<int>(rng() % 15);
    for (int i = 0; i < n; ++i) {
      words.push_back(rng() % 3 == 0 ? pronouns[rng() % pronouns.size()]
                                     : Filler()[rng() % Filler().size()]);
    }
    words.push_back("herself");
    const std::string text = absl::StrJoin(words, " ");
    auto there = BuildRequest(r.lexicon, text, "herself", Attribute::kMan);
    ASSERT_TRUE(there.ok());
    auto forward = engine.Perturb(*there);
    ASSERT_TRUE(forward.ok());
    auto back_request =
        BuildRequest(r.lexicon, forward->text, "himself", Attribute::kWoman);
    ASSERT_TRUE(back_request.ok());
    auto back = engine.Perturb(*back_request);
    ASSERT_TRUE(back.ok());
    EXPECT_EQ(back->text, text);
  }
}

TEST(EditsTest, DiffEditsAndApply) {
  const std::vector<Edit> edits =
      DiffEdits("women like shopping", "men like shopping");
  ASSERT_EQ(edits.size(), 1u);
  EXPECT_EQ(edits[0].span, (Span{0, 5}));
  EXPECT_EQ(edits[0].original, "women");
  EXPECT_EQ(edits[0].replacement, "men");
  EXPECT_TRUE(DiffEdits("same text", "same text").empty());
}

TEST(EditsTest, DiffEditsReproducesAfterOnFuzz) {
  std::mt19937_64 rng(17);
  const std::vector<std::string> vocabulary = {"a", "b", "c", "she", "he",
                                               ",", "."};
  for (int trial = 0; trial < 1000; ++trial) {
    auto make = [&] {
      std::vector<std::string> words;
      const int n = static_cast<int>(rng() % 8);
      for (int i = 0; i < n; ++i) words.push_back(vocabulary[rng() % vocabulary.size()]);
      return absl::StrJoin(words, " ");
    };
    const std::string before = make();
    const std::string after = make();
    const std::vector<Edit> edits = DiffEdits(before, after);
    ASSERT_TRUE(ValidateEdits(before, edits).ok()) << before << " | " << after;
    ASSERT_EQ(Words(ApplyEdits(before, edits)), Words(after))
        << before << " | " << after;
  }
}

TEST(EditsTest, OverlappingEditsRejected) {
  const std::vector<Edit> edits = {{{0, 3}, "abc", "x"}, {{2, 4}, "cd", "y"}};
  EXPECT_FALSE(ValidateEdits("abcd", edits).ok());
}

TEST(EngineKindTest, Names) {
  EXPECT_EQ(ParseEngineKind("heuristic-guarded"), EngineKind::kHeuristicGuarded);
  EXPECT_EQ(ParseEngineKind("heuristic-naive"), EngineKind::kHeuristicNaive);
  EXPECT_EQ(ParseEngineKind("external"), EngineKind::kExternal);
  EXPECT_THAT(std::vector<std::string_view>{EngineKindName(EngineKind::kExternal)},
              ElementsAre("external"));
}

}  // namespace
}  // namespace perturbkit
