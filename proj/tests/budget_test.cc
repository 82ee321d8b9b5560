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

#include "budget.h"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_replace.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "oracles.h"

#ifndef LABELDP_TEST_DATA_DIR
#error "LABELDP_TEST_DATA_DIR must be defined"
#endif

namespace labeldp {
namespace {

using ::testing::HasSubstr;

std::string ReadData(const std::string& name) {
  std::ifstream in(std::string(LABELDP_TEST_DATA_DIR) + "/" + name);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// epsilon = 2 delta ln((n - j + s) / (j - s)), s = sqrt(-n ln(1 - P) / 2),
// evaluated in 50-digit arithmetic. Returns a negative value when j <= s.
double OracleBudget(int64_t n, double phi, double confidence, double delta) {
  using oracle::Float;
  const Float s = sqrt(-Float(n) * log(Float(1) - Float(confidence)) / 2);
  const Float j = Float(phi) * n;
  if (j <= s) return -1.0;
  return static_cast<double>(Float(2) * delta *
                             log((Float(n) - j + s) / (j - s)));
}

TEST(BudgetQueryTest, Validates) {
  EXPECT_FALSE(BudgetQuery::Create(0, 0.5, 0.999).ok());
  EXPECT_FALSE(BudgetQuery::Create(100, 0.0, 0.999).ok());
  EXPECT_FALSE(BudgetQuery::Create(100, 1.5, 0.999).ok());
  EXPECT_FALSE(BudgetQuery::Create(100, 0.5, 1.0).ok());
  EXPECT_FALSE(BudgetQuery::Create(100, 0.5, 0.0).ok());
  EXPECT_FALSE(BudgetQuery::Create(100, 0.5, 0.9, -1.0).ok());
  EXPECT_TRUE(BudgetQuery::Create(100, 0.5, 0.5).ok());
}

TEST(MinBudgetTest, MatchesExtendedPrecisionFormula) {
  for (int64_t n : {100, 1000, 10'000, 1'000'000}) {
    for (double phi : {0.05, 0.1, 0.25, 0.4, 0.5}) {
      for (double confidence : {0.5, 0.95, 0.999}) {
        for (double delta : {1.0, 2.5}) {
          const BudgetResult result =
              MinBudget(*BudgetQuery::Create(n, phi, confidence, delta));
          const double expected = OracleBudget(n, phi, confidence, delta);
          if (expected < 0) {
            EXPECT_FALSE(result.applicable());
          } else {
            ASSERT_TRUE(result.applicable());
            EXPECT_NEAR(*result.epsilon_min, expected, 1e-12 * expected);
          }
        }
      }
    }
  }
}

TEST(MinBudgetTest, ScalesWithSensitivity) {
  const double one =
      *MinBudget(*BudgetQuery::Create(1000, 0.3, 0.95, 1.0)).epsilon_min;
  const double three =
      *MinBudget(*BudgetQuery::Create(1000, 0.3, 0.95, 3.0)).epsilon_min;
  EXPECT_NEAR(three, 3.0 * one, 1e-12);
}

TEST(MinBudgetTest, LowConfidenceSanity) {
  const BudgetResult result = MinBudget(*BudgetQuery::Create(100, 0.5, 0.5));
  ASSERT_TRUE(result.applicable());
  EXPECT_GT(*result.epsilon_min, 0.0);
}

TEST(MinBudgetTest, EmptyCellsOfThePublishedTable) {
  EXPECT_FALSE(MinBudget(*BudgetQuery::Create(100, 0.15, 0.999)).applicable());
  EXPECT_FALSE(MinBudget(*BudgetQuery::Create(1000, 0.05, 0.999)).applicable());
  EXPECT_TRUE(MinBudget(*BudgetQuery::Create(1000, 0.05, 0.95)).applicable());
  EXPECT_FALSE(MinBudget(*BudgetQuery::Create(100, 0.10, 0.95)).applicable());
}

TEST(HalfFlipBudgetTest, PublishedSpotValues) {
  EXPECT_NEAR(*HalfFlipBudget(100).epsilon_min, 1.562, 1e-3);
  EXPECT_NEAR(*HalfFlipBudget(1000).epsilon_min, 0.472, 1e-3);
  EXPECT_NEAR(*HalfFlipBudget(10'000).epsilon_min, 0.149, 1e-3);
}

TEST(HalfFlipBudgetTest, AgreesWithGeneralFormulaAtTheClosedFormConfidence) {
  // The closed form uses exp(-2 (n (1/2 - p))^2 / n) = 10^-3 exactly.
  for (int64_t n : {100, 1000, 10'000}) {
    EXPECT_NEAR(*HalfFlipBudget(n).epsilon_min,
                OracleBudget(n, 0.5, 0.999, 1.0), 1e-9);
  }
}

TEST(HalfFlipBudgetTest, NotApplicableForTinyN) {
  EXPECT_FALSE(HalfFlipBudget(10).applicable());
}

TEST(FlipAllowanceTest, RoundsRepresentationNoise) {
  EXPECT_EQ(FlipAllowance(100, 0.35), 35);
  EXPECT_EQ(FlipAllowance(1000, 0.15), 150);
  EXPECT_EQ(FlipAllowance(10, 0.55), 5);
  EXPECT_EQ(FlipAllowance(7, 0.5), 3);
}

TEST(SuccessAtBudgetTest, ExactAndHoeffding) {
  absl::StatusOr<SuccessForBudget> success =
      SuccessAtBudget(100, 1.5, 1.0, 0.5);
  ASSERT_TRUE(success.ok());
  const oracle::Float p = oracle::FlipProbability(1.5, 1.0);
  EXPECT_NEAR(success->exact,
              static_cast<double>(oracle::TruncBinom(100, 0, 50, p)), 1e-14);
  EXPECT_NEAR(success->hoeffding,
              static_cast<double>(
                  oracle::HoeffdingLowerBound(100, 50, static_cast<double>(p))),
              1e-14);
  EXPECT_LE(success->hoeffding, success->exact);
  EXPECT_FALSE(SuccessAtBudget(0, 1.5, 1.0, 0.5).ok());
  EXPECT_FALSE(SuccessAtBudget(100, -1.0, 1.0, 0.5).ok());
}

TEST(BudgetRoundTripTest, RecommendedBudgetMeetsConfidence) {
  for (double confidence : {0.999, 0.95}) {
    const BudgetTable table = ComputeBudgetTable(
        confidence, DefaultTableSizes(), DefaultFlipPercents());
    for (size_t r = 0; r < table.n_values.size(); ++r) {
      for (size_t c = 0; c < table.flip_percents.size(); ++c) {
        const BudgetResult& cell = table.cells[r][c];
        if (!cell.applicable()) continue;
        const int64_t n = table.n_values[r];
        const double phi = table.flip_percents[c] / 100.0;
        absl::StatusOr<SuccessForBudget> success =
            SuccessAtBudget(n, *cell.epsilon_min, 1.0, phi);
        ASSERT_TRUE(success.ok());
        EXPECT_GE(success->exact, confidence) << "n=" << n << " phi=" << phi;
        EXPECT_GE(success->hoeffding, confidence - 1e-9)
            << "n=" << n << " phi=" << phi;
      }
    }
  }
}

TEST(RoundHalfUpTest, ThreeDecimals) {
  EXPECT_DOUBLE_EQ(RoundHalfUp3(1.5615), 1.562);
  EXPECT_DOUBLE_EQ(RoundHalfUp3(0.4724), 0.472);
  EXPECT_DOUBLE_EQ(RoundHalfUp3(2.0), 2.0);
}

class PublishedTableTest
    : public ::testing::TestWithParam<std::pair<double, const char*>> {};

TEST_P(PublishedTableTest, MatchesFixture) {
  const auto [confidence, file] = GetParam();
  const BudgetTable table = ComputeBudgetTable(confidence, DefaultTableSizes(),
                                               DefaultFlipPercents());
  absl::StatusOr<TableDiff> diff = CompareWithGolden(table, ReadData(file));
  ASSERT_TRUE(diff.ok()) << diff.status();
  EXPECT_EQ(diff->compared_cells, 50);
  EXPECT_TRUE(diff->Matches()) << diff->mismatches.front();
}

TEST_P(PublishedTableTest, EmbeddedCopyEqualsFixture) {
  const auto [confidence, file] = GetParam();
  EXPECT_EQ(std::string(GoldenTableCsv(confidence)), ReadData(file));
}

INSTANTIATE_TEST_SUITE_P(
    Tables, PublishedTableTest,
    ::testing::Values(std::make_pair(0.999, "table_999.csv"),
                      std::make_pair(0.95, "table_95.csv")));

TEST(CompareWithGoldenTest, DetectsEditedCell) {
  const BudgetTable table =
      ComputeBudgetTable(0.999, DefaultTableSizes(), DefaultFlipPercents());
  const std::string edited =
      absl::StrReplaceAll(ReadData("table_999.csv"), {{"1.562", "1.565"}});
  absl::StatusOr<TableDiff> diff = CompareWithGolden(table, edited);
  ASSERT_TRUE(diff.ok());
  ASSERT_EQ(diff->mismatches.size(), 1u);
  EXPECT_THAT(diff->mismatches[0], HasSubstr("n=100 flip=50%"));
}

TEST(CompareWithGoldenTest, DetectsEmptyCellMismatch) {
  const BudgetTable table =
      ComputeBudgetTable(0.999, DefaultTableSizes(), DefaultFlipPercents());
  const std::string filled = absl::StrReplaceAll(
      ReadData("table_999.csv"), {{"8.487,,,", "8.487,9.000,,"}});
  absl::StatusOr<TableDiff> diff = CompareWithGolden(table, filled);
  ASSERT_TRUE(diff.ok());
  ASSERT_EQ(diff->mismatches.size(), 1u);
  EXPECT_THAT(diff->mismatches[0], HasSubstr("NOT_APPLICABLE"));
}

TEST(CompareWithGoldenTest, RejectsMalformedInput) {
  const BudgetTable table =
      ComputeBudgetTable(0.999, DefaultTableSizes(), DefaultFlipPercents());
  EXPECT_EQ(CompareWithGolden(table, "n,50%\n100,1\n").status().code(),
            absl::StatusCode::kDataLoss);
  const std::string garbage =
      absl::StrReplaceAll(ReadData("table_999.csv"), {{"1.562", "abc"}});
  EXPECT_EQ(CompareWithGolden(table, garbage).status().code(),
            absl::StatusCode::kDataLoss);
}

TEST(GoldenTableCsvTest, UnknownConfidenceIsEmpty) {
  EXPECT_TRUE(GoldenTableCsv(0.9).empty());
}

TEST(BudgetTableFormatTest, CsvRoundTripsThroughComparison) {
  const BudgetTable table =
      ComputeBudgetTable(0.95, DefaultTableSizes(), DefaultFlipPercents());
  const std::string csv = BudgetTableCsv(table);
  EXPECT_EQ(csv, ReadData("table_95.csv"));
}

TEST(BudgetTableFormatTest, JsonMarksEmptyCells) {
  const BudgetTable table =
      ComputeBudgetTable(0.999, DefaultTableSizes(), DefaultFlipPercents());
  const nlohmann::json json = nlohmann::json::parse(BudgetTableJson(table));
  EXPECT_EQ(json["rows"].size(), 5u);
  const nlohmann::json& first = json["rows"][0];
  EXPECT_EQ(first["n"], 100);
  EXPECT_EQ(first["cells"][0]["status"], "APPLICABLE");
  EXPECT_DOUBLE_EQ(first["cells"][0]["epsilon_min_rounded"].get<double>(),
                   1.562);
  EXPECT_EQ(first["cells"][9]["status"], "NOT_APPLICABLE");
  EXPECT_FALSE(first["cells"][9].contains("epsilon_min"));
}

TEST(BudgetTableFormatTest, TextLayout) {
  const BudgetTable table =
      ComputeBudgetTable(0.999, DefaultTableSizes(), DefaultFlipPercents());
  const std::string text = BudgetTableText(table);
  EXPECT_THAT(text, HasSubstr("confidence 0.999"));
  EXPECT_THAT(text, HasSubstr("  1.562"));
  EXPECT_THAT(text, HasSubstr("1000000"));
}

}  // namespace
}  // namespace labeldp
