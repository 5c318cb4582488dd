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

#include "perturbkit/lexicon.h"

#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "perturbkit/attributes.h"
#include "test_util.h"

namespace perturbkit {
namespace {

using ::perturbkit::testing::TestResources;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(AttributesTest, TokensRoundTrip) {
  for (Axis axis : kAllAxes) {
    for (Attribute attribute : AttributesOf(axis)) {
      EXPECT_EQ(AxisOf(attribute), axis);
      for (AttrFormat format : {AttrFormat::kPlain, AttrFormat::kAxisPrefixed}) {
        const std::string token = AttributeToken(attribute, format);
        EXPECT_EQ(ParseAttributeToken(token), attribute) << token;
      }
      EXPECT_EQ(ParseAttribute(AttributeName(attribute)), attribute);
    }
  }
  EXPECT_EQ(AttributeToken(Attribute::kNonbinaryUnderspecified,
                           AttrFormat::kPlain),
            "non-binary");
  EXPECT_EQ(AttributeToken(Attribute::kMan, AttrFormat::kAxisPrefixed),
            "gender:man");
}

TEST(AttributesTest, AxisSizes) {
  EXPECT_EQ(AttributesOf(Axis::kGender).size(), 3u);
  EXPECT_EQ(AttributesOf(Axis::kRaceEthnicity).size(), 6u);
  EXPECT_EQ(AttributesOf(Axis::kAge).size(), 5u);
}

TEST(AttributesTest, PairSetRejectsIdentityAndCrossAxis) {
  EXPECT_FALSE(AttributePairSet::Create(Axis::kGender,
                                        {{Attribute::kMan, Attribute::kMan}})
                   .ok());
  EXPECT_FALSE(AttributePairSet::Create(Axis::kGender,
                                        {{Attribute::kMan, Attribute::kAsian}})
                   .ok());
}

TEST(AttributesTest, PairSelectionParse) {
  auto selection = PairSelection::Parse("gender:woman>man, age:child>senior");
  ASSERT_TRUE(selection.ok()) << selection.status();
  ASSERT_NE(selection->For(Axis::kGender), nullptr);
  EXPECT_TRUE(
      selection->For(Axis::kGender)->Contains(Attribute::kWoman, Attribute::kMan));
  EXPECT_FALSE(
      selection->For(Axis::kGender)->Contains(Attribute::kMan, Attribute::kWoman));
  EXPECT_EQ(selection->For(Axis::kRaceEthnicity), nullptr);
  EXPECT_FALSE(PairSelection::Parse("gender:woman").ok());
  EXPECT_FALSE(PairSelection::Parse("planet:woman>man").ok());
}

TEST(LexiconTest, BundledLexiconLoads) {
  const Lexicon& lexicon = TestResources().lexicon;
  EXPECT_GE(lexicon.size(), 785u);
  for (Axis axis : kAllAxes) EXPECT_GT(lexicon.CountForAxis(axis), 0u);
}

TEST(LexiconTest, EmptyFileIsAnError) {
  EXPECT_FALSE(Lexicon::Parse("").ok());
}

TEST(LexiconTest, SwapOutsideAxisIsAnError) {
  const std::string content =
      "perturbkit-lexicon v1\n"
      R"({"surface":"lady","axis":"gender","attribute":"woman",)"
      R"("category":"common_noun","swaps":{"asian":"asian lady"}})"
      "\n";
  auto lexicon = Lexicon::Parse(content);
  ASSERT_FALSE(lexicon.ok());
  EXPECT_THAT(std::string(lexicon.status().message()), HasSubstr("lady"));
}

TEST(LexiconTest, ParseErrorNamesTheLine) {
  const std::string content = "perturbkit-lexicon v1\n{not json}\n";
  auto lexicon = Lexicon::Parse(content);
  ASSERT_FALSE(lexicon.ok());
  EXPECT_THAT(std::string(lexicon.status().message()), HasSubstr("2"));
}

TEST(LexiconTest, PronounSwapTableIsTotal) {
  const Lexicon& lexicon = TestResources().lexicon;
  for (const LexiconEntry& entry : lexicon.entries()) {
    if (entry.category != Category::kPronoun) continue;
    ASSERT_TRUE(entry.pronoun_case.has_value()) << entry.surface;
    for (Attribute target : AttributesOf(Axis::kGender)) {
      if (target == entry.attribute) continue;
      const std::string* swap = entry.SwapFor(target);
      ASSERT_NE(swap, nullptr) << entry.surface << " -> "
                               << AttributeName(target);
      EXPECT_FALSE(swap->empty());
    }
  }
}

TEST(LexiconTest, SerializeRoundTrip) {
  const Lexicon& lexicon = TestResources().lexicon;
  const std::string serialized = lexicon.Serialize();
  auto reloaded = Lexicon::Parse(serialized);
  ASSERT_TRUE(reloaded.ok()) << reloaded.status();
  EXPECT_EQ(reloaded->size(), lexicon.size());
  EXPECT_EQ(reloaded->Serialize(), serialized);
}

TEST(LexiconTest, SyncreticPronounHasTwoCases) {
  const std::vector<PronounCase> cases =
      TestResources().lexicon.PronounCases("her");
  EXPECT_EQ(cases.size(), 2u);
}

TEST(PairsForTest, FullGenderSet) {
  auto pairs = PairsFor("lady", Attribute::kWoman,
                        AttributePairSet::Full(Axis::kGender));
  ASSERT_TRUE(pairs.ok());
  EXPECT_THAT(*pairs,
              ElementsAre(WordTarget{"lady", Attribute::kMan},
                          WordTarget{"lady", Attribute::kNonbinaryUnderspecified}));
}

TEST(PairsForTest, RestrictedSet) {
  auto set = AttributePairSet::Create(Axis::kGender,
                                      {{Attribute::kWoman, Attribute::kMan}});
  ASSERT_TRUE(set.ok());
  auto pairs = PairsFor("she", Attribute::kWoman, *set);
  ASSERT_TRUE(pairs.ok());
  EXPECT_THAT(*pairs, ElementsAre(WordTarget{"she", Attribute::kMan}));
}

TEST(PairsForTest, FiveRaceTargets) {
  auto pairs = PairsFor("Asian", Attribute::kAsian,
                        AttributePairSet::Full(Axis::kRaceEthnicity));
  ASSERT_TRUE(pairs.ok());
  EXPECT_EQ(pairs->size(), 5u);
}

TEST(PairsForTest, WrongAxisIsAnError) {
  EXPECT_FALSE(PairsFor("Asian", Attribute::kAsian,
                        AttributePairSet::Full(Axis::kGender))
                   .ok());
}

TEST(PairsForTest, NeverEmitsIdentityAcrossWholeLexicon) {
  const Lexicon& lexicon = TestResources().lexicon;
  for (const LexiconEntry& entry : lexicon.entries()) {
    auto pairs = PairsFor(entry.surface, entry.attribute,
                          AttributePairSet::Full(entry.axis));
    ASSERT_TRUE(pairs.ok());
    EXPECT_EQ(pairs->size(), AttributesOf(entry.axis).size() - 1);
    for (const WordTarget& pair : *pairs) EXPECT_NE(pair.target, entry.attribute);
  }
}

TEST(NameTableTest, LooksUpBuckets) {
  const NameTable& names = TestResources().names;
  EXPECT_TRUE(names.Contains("Sue"));
  EXPECT_EQ(names.AttributeOf("Sue", Axis::kGender), Attribute::kWoman);
  EXPECT_EQ(names.AttributeOf("Jamal", Axis::kRaceEthnicity), Attribute::kBlack);
  EXPECT_FALSE(names.Names(Axis::kGender, Attribute::kMan).empty());
}

}  // namespace
}  // namespace perturbkit
