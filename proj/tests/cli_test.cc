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


#include "cli.h"

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace perturbkit {
namespace {

using ::perturbkit::testing::ReadFile;
using ::perturbkit::testing::TempDir;
using ::perturbkit::testing::WriteFile;
using ::testing::HasSubstr;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  args.insert(args.begin(), "--quiet");
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(ConfigTest, ParsesKeyValueLines) {
  auto config = ParseConfig(
      "# comment\n"
      "[augment]\n"
      "min_score = 0.25\n"
      "strategy: \"balanced\"\n"
      "\n"
      "workers=4\n");
  ASSERT_TRUE(config.ok()) << config.status();
  EXPECT_EQ(config->at("min-score"), "0.25");
  EXPECT_EQ(config->at("strategy"), "balanced");
  EXPECT_EQ(config->at("workers"), "4");
  EXPECT_FALSE(ParseConfig("just a line\n").ok());
}

TEST(CliTest, PerturbPrintsText) {
  const CliRun run = Cli({"perturb", "--text", "women like shopping", "--word",
                       "women", "--target", "man"});
  EXPECT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(run.out, "men like shopping\n");
}

TEST(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(Cli({"--help"}).code, 0);
  EXPECT_EQ(Cli({"perturb", "--bogus"}).code, 1);
  EXPECT_EQ(Cli({"augment", "--input", "x.jsonl"}).code, 1);
}

TEST(CliTest, AugmentThenFairscore) {
  TempDir dir;
  WriteFile(dir.File("data.jsonl"),
            "{\"id\":\"a\",\"text\":\"she went home\"}\n"
            "{\"id\":\"b\",\"text\":\"he likes tea\"}\n");
  const CliRun augment = Cli({"augment", "--input", dir.File("data.jsonl"),
                           "--output", dir.File("records.jsonl"), "--seed",
                           "5", "--min-score", "0"});
  ASSERT_EQ(augment.code, 0) << augment.err;
  EXPECT_TRUE(std::filesystem::exists(dir.File("records.jsonl.manifest.json")));
  EXPECT_THAT(ReadFile(dir.File("records.jsonl.manifest.json")),
              HasSubstr("\"seed\""));

  WriteFile(dir.File("pred.jsonl"),
            "{\"id\":\"a\",\"prediction\":1}\n{\"id\":\"b\",\"prediction\":0}\n");
  const CliRun score = Cli({"fairscore", "--orig", dir.File("pred.jsonl"),
                         "--pert", dir.File("pred.jsonl"), "--records",
                         dir.File("records.jsonl")});
  EXPECT_EQ(score.code, 0) << score.err;
  EXPECT_THAT(score.out, HasSubstr("fairscore  0.0000"));
}

TEST(CliTest, SkippedLinesExitWithDataCode) {
  TempDir dir;
  WriteFile(dir.File("data.jsonl"),
            "{\"id\":\"a\",\"text\":\"she went home\"}\nbad\n");
  const CliRun run = Cli({"augment", "--input", dir.File("data.jsonl"),
                       "--output", dir.File("out.jsonl"), "--seed", "1",
                       "--min-score", "0"});
  EXPECT_EQ(run.code, 2);
  EXPECT_TRUE(std::filesystem::exists(dir.File("out.jsonl")));
}

}  // namespace
}  // namespace perturbkit
