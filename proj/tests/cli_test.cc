//
// Copyright 2026 The LabelDP Authors
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

#include <filesystem>
#include <string>

#include "cli_runner.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

#ifndef LABELDP_TEST_DATA_DIR
#error "LABELDP_TEST_DATA_DIR must be defined"
#endif

namespace labeldp::testing {
namespace {

using ::testing::HasSubstr;
using ::testing::Not;

constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = ScratchDir(
        ::testing::UnitTest::GetInstance()->current_test_info()->name());
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, NoSubcommandIsAnInputError) {
  EXPECT_EQ(RunCli("").exit_code, kInputError);
  EXPECT_EQ(RunCli("frobnicate").exit_code, kInputError);
}

TEST_F(CliTest, HelpExitsCleanly) {
  const CliResult result = RunCli("--help");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_THAT(result.out, HasSubstr("privatize"));
}

TEST_F(CliTest, UnknownFlagRejected) {
  EXPECT_EQ(RunCli("tables --confidence 0.999 --bogus").exit_code, kInputError);
}

TEST_F(CliTest, PrivatizeSmallFileWithHugeBudget) {
  WriteFile(Path("in.csv"), "id,label\na,1\nb,-1\nc,1\n");
  const CliResult result =
      RunCli("privatize --in " + Path("in.csv") +
             " --epsilon 100 --seed 7 --out " + Path("out"));
  ASSERT_EQ(result.exit_code, 0) << result.err;
  EXPECT_EQ(ReadFile(Path("out/privatized.csv")), "id,label\na,1\nb,-1\nc,1\n");
  const nlohmann::json record =
      nlohmann::json::parse(ReadFile(Path("out/privatized.json")));
  EXPECT_EQ(record["q"], 3);
  EXPECT_EQ(record["flip_count"], 0);
  EXPECT_EQ(record["seed"], 7);
  EXPECT_THAT(result.err, Not(HasSubstr("warning")));
}

TEST_F(CliTest, PrivatizeIsRepeatable) {
  std::string csv = "id,label\n";
  for (int i = 0; i < 2000; ++i) {
    csv += std::to_string(i) + (i % 2 ? ",1\n" : ",-1\n");
  }
  WriteFile(Path("in.csv"), csv);
  const std::string args =
      "privatize --in " + Path("in.csv") + " --epsilon 1 --seed 3 --out ";
  ASSERT_EQ(RunCli(args + Path("a")).exit_code, 0);
  ASSERT_EQ(RunCli(args + Path("b")).exit_code, 0);
  EXPECT_EQ(ReadFile(Path("a/privatized.csv")),
            ReadFile(Path("b/privatized.csv")));
  EXPECT_EQ(ReadFile(Path("a/privatized.json")),
            ReadFile(Path("b/privatized.json")));
}

TEST_F(CliTest, PrivatizeFlipRateNearPublishedProbability) {
  std::string csv = "id,label\n";
  for (int i = 0; i < 10'000; ++i) csv += std::to_string(i) + ",1\n";
  WriteFile(Path("in.csv"), csv);
  const CliResult result =
      RunCli("privatize --in " + Path("in.csv") +
             " --epsilon 1.5 --seed 11 --out " + Path("out"));
  ASSERT_EQ(result.exit_code, 0) << result.err;
  const nlohmann::json record =
      nlohmann::json::parse(ReadFile(Path("out/privatized.json")));
  EXPECT_NEAR(record["flip_count"].get<double>() / 10'000.0, 0.321, 0.02);
}

TEST_F(CliTest, MissingSeedWarnsAndUsesZero) {
  WriteFile(Path("in.csv"), "id,label\na,1\nb,-1\n");
  const CliResult result = RunCli("privatize --in " + Path("in.csv") +
                                  " --epsilon 1 --out " + Path("out"));
  ASSERT_EQ(result.exit_code, 0);
  EXPECT_THAT(result.err, HasSubstr("warning"));
  EXPECT_EQ(
      nlohmann::json::parse(ReadFile(Path("out/privatized.json")))["seed"], 0);
}

TEST_F(CliTest, MalformedCsvReportsLine) {
  WriteFile(Path("bad.csv"), "id,label\na,1\nb,1,2\n");
  const CliResult result = RunCli("privatize --in " + Path("bad.csv") +
                                  " --epsilon 1 --seed 1 --out " + Path("out"));
  EXPECT_EQ(result.exit_code, kInputError);
  EXPECT_THAT(result.err, HasSubstr("line 3"));
}

TEST_F(CliTest, NonBinaryLabelRejected) {
  WriteFile(Path("bad.csv"), "id,label\na,0\n");
  const CliResult result = RunCli("privatize --in " + Path("bad.csv") +
                                  " --epsilon 1 --seed 1 --out " + Path("out"));
  EXPECT_EQ(result.exit_code, kInputError);
  EXPECT_THAT(result.err, HasSubstr("line 2"));
}

TEST_F(CliTest, NonPositiveBudgetRejected) {
  WriteFile(Path("in.csv"), "id,label\na,1\n");
  EXPECT_EQ(RunCli("privatize --in " + Path("in.csv") +
                   " --epsilon 0 --seed 1 --out " + Path("out"))
                .exit_code,
            kInputError);
}

TEST_F(CliTest, RandomizedResponseSidecar) {
  WriteFile(Path("in.csv"), "id,label\na,1\nb,-1\nc,1\nd,1\n");
  const CliResult result = RunCli("rr --in " + Path("in.csv") +
                                  " --epsilon 2 --seed 5 --out " + Path("out"));
  ASSERT_EQ(result.exit_code, 0) << result.err;
  const nlohmann::json record =
      nlohmann::json::parse(ReadFile(Path("out/rr.json")));
  EXPECT_EQ(record["mechanism"], "rr");
  EXPECT_EQ(record["n"], 4);
}

TEST_F(CliTest, TablesCheckPasses) {
  for (const char* confidence : {"0.999", "0.95"}) {
    const CliResult result =
        RunCli(std::string("tables --confidence ") + confidence + " --check");
    EXPECT_EQ(result.exit_code, 0) << result.err;
    EXPECT_THAT(result.out, HasSubstr("table check: OK"));
  }
}

TEST_F(CliTest, TablesCheckFailsOnEditedGolden) {
  std::string golden =
      ReadFile(std::string(LABELDP_TEST_DATA_DIR) + "/table_999.csv");
  golden.replace(golden.find("2.049"), 5, "2.051");
  WriteFile(Path("edited.csv"), golden);
  const CliResult result = RunCli(
      "tables --confidence 0.999 --check --golden " + Path("edited.csv"));
  EXPECT_EQ(result.exit_code, kCheckFailed);
  EXPECT_THAT(result.err, HasSubstr("n=100 flip=45%"));
}

TEST_F(CliTest, TablesRejectUnsupportedConfidence) {
  EXPECT_EQ(RunCli("tables --confidence 0.9").exit_code, kInputError);
  const CliResult raw = RunCli("tables --confidence-raw 0.5 --csv");
  ASSERT_EQ(raw.exit_code, 0);
  EXPECT_THAT(raw.out, HasSubstr("n,50%,45%"));
}

TEST_F(CliTest, TablesJsonIsValid) {
  const CliResult result = RunCli("tables --confidence 0.95 --json");
  ASSERT_EQ(result.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(result.out)["rows"].size(), 5u);
}

TEST_F(CliTest, BudgetCommand) {
  CliResult result = RunCli("budget --n 100 --half-flip");
  ASSERT_EQ(result.exit_code, 0);
  EXPECT_THAT(result.out, HasSubstr("epsilon_min 1.5615"));
  result = RunCli("budget --n 100 --phi 0.5 --confidence 0.5");
  ASSERT_EQ(result.exit_code, 0);
  EXPECT_THAT(result.out, HasSubstr("epsilon_min"));
  result = RunCli("budget --n 100 --phi 0.05");
  ASSERT_EQ(result.exit_code, 0);
  EXPECT_EQ(result.out, "NOT_APPLICABLE\n");
  EXPECT_EQ(RunCli("budget --n 0").exit_code, kInputError);
}

TEST_F(CliTest, SuccessCommand) {
  const CliResult result = RunCli("success --n 1000 --epsilon 0.472");
  ASSERT_EQ(result.exit_code, 0);
  EXPECT_THAT(result.out, HasSubstr("success_exact 0.999"));
}

TEST_F(CliTest, ScanCommand) {
  CliResult result = RunCli("scan --property 3 --n-max 60");
  ASSERT_EQ(result.exit_code, 0) << result.err;
  EXPECT_EQ(nlohmann::json::parse(result.out)["held"], true);
  result = RunCli("scan --property 6 --p-list 0.321 --n-list 100,2000");
  ASSERT_EQ(result.exit_code, 0);
  EXPECT_THAT(result.out, HasSubstr("2000,0.321,0.05,0.99"));
  EXPECT_EQ(RunCli("scan --property 8").exit_code, kInputError);
}

TEST_F(CliTest, DegradeCommand) {
  const CliResult result =
      RunCli("degrade --epsilon 1.5 --n-list 100,1000 --bins 10");
  ASSERT_EQ(result.exit_code, 0);
  EXPECT_THAT(result.out, HasSubstr("n,flip_rate_bin,probability\n"));
  EXPECT_THAT(result.out, HasSubstr("# concentration n=100 "));
}

TEST_F(CliTest, ExperimentIsRepeatableAcrossThreadCounts) {
  const std::string args =
      "experiment --epsilons 0.5,3 --loss hinge --loss barrier:b=2,r=1 "
      "--n-list 200 --repetitions 2 --epochs 3 --test-size 200 --seed 4 "
      "--format csv";
  const CliResult one = RunCli(args + " --threads 1");
  const CliResult two = RunCli(args + " --threads 2");
  ASSERT_EQ(one.exit_code, 0) << one.err;
  ASSERT_EQ(two.exit_code, 0) << two.err;
  EXPECT_EQ(one.out, two.out);
  EXPECT_THAT(one.out, HasSubstr("\"barrier:b=2,r=1\""));
}

TEST_F(CliTest, ExperimentRejectsBadLoss) {
  EXPECT_EQ(RunCli("experiment --loss cubic --seed 1").exit_code, kInputError);
}

TEST_F(CliTest, CheckPassesAndFaultInjectionFails) {
  CliResult result = RunCli("check --json");
  ASSERT_EQ(result.exit_code, 0) << result.err;
  EXPECT_EQ(nlohmann::json::parse(result.out)["passed"], true);
  result = RunCli("check --inject-fault recursion");
  EXPECT_EQ(result.exit_code, kCheckFailed);
  EXPECT_THAT(result.err, HasSubstr("em_rr_identity"));
}

TEST_F(CliTest, CheckDetectsEditedGoldenTable) {
  std::filesystem::create_directories(Path("golden"));
  std::string golden =
      ReadFile(std::string(LABELDP_TEST_DATA_DIR) + "/table_95.csv");
  golden.replace(golden.find("0.999"), 5, "0.990");
  WriteFile(Path("golden/table_95.csv"), golden);
  std::filesystem::copy_file(
      std::string(LABELDP_TEST_DATA_DIR) + "/table_999.csv",
      Path("golden/table_999.csv"));
  const CliResult result = RunCli("check --golden-dir " + Path("golden"));
  EXPECT_EQ(result.exit_code, kCheckFailed);
  EXPECT_THAT(result.err, HasSubstr("table_95"));
  EXPECT_THAT(result.err, Not(HasSubstr("table_999")));
}

}  // namespace
}  // namespace labeldp::testing
