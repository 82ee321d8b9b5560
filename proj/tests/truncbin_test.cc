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

#include "truncbin.h"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_split.h"
#include "em_core.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "oracles.h"

namespace labeldp {
namespace {

double Exact(int64_t n, int64_t lower, int64_t upper, double p) {
  return static_cast<double>(
      oracle::TruncBinom(n, lower, upper, oracle::Float(p)));
}

TEST(TruncatedSumQueryTest, ValidatesBounds) {
  EXPECT_FALSE(TruncatedSumQuery::Create(10, 5, 4, 0.3).ok());
  EXPECT_FALSE(TruncatedSumQuery::Create(10, -1, 4, 0.3).ok());
  EXPECT_FALSE(TruncatedSumQuery::Create(10, 0, 11, 0.3).ok());
  EXPECT_FALSE(TruncatedSumQuery::Create(10, 0, 4, 1.5).ok());
  EXPECT_FALSE(TruncatedSumQuery::Create(10, 0, 4, std::nan("")).ok());
  EXPECT_TRUE(TruncatedSumQuery::Create(0, 0, 0, 0.3).ok());
}

TEST(TruncBinomTest, MatchesExtendedPrecisionSums) {
  for (int64_t n : {1, 2, 5, 17, 100, 1000, 5000}) {
    for (double p : {0.01, 0.1, 0.321, 0.5, 0.77, 0.99}) {
      for (const auto& [lo_frac, hi_frac] :
           std::vector<std::pair<double, double>>{
               {0.0, 0.5}, {0.0, 1.0}, {0.2, 0.4}, {0.45, 0.55}, {0.9, 1.0}}) {
        const int64_t lower = static_cast<int64_t>(lo_frac * n);
        const int64_t upper = static_cast<int64_t>(hi_frac * n);
        const double actual =
            TruncBinom(*TruncatedSumQuery::Create(n, lower, upper, p));
        const double expected = Exact(n, lower, upper, p);
        EXPECT_NEAR(actual, expected, 1e-13 + 1e-12 * expected)
            << "n=" << n << " p=" << p << " [" << lower << "," << upper << "]";
      }
    }
  }
}

TEST(TruncBinomTest, DegenerateProbabilities) {
  EXPECT_EQ(TruncBinom(*TruncatedSumQuery::Create(10, 0, 3, 0.0)), 1.0);
  EXPECT_EQ(TruncBinom(*TruncatedSumQuery::Create(10, 1, 3, 0.0)), 0.0);
  EXPECT_EQ(TruncBinom(*TruncatedSumQuery::Create(10, 3, 10, 1.0)), 1.0);
  EXPECT_EQ(TruncBinom(*TruncatedSumQuery::Create(10, 3, 9, 1.0)), 0.0);
}

TEST(TruncBinomTest, FullRangeIsOne) {
  for (int64_t n : {1, 10, 1000, 100'000}) {
    EXPECT_NEAR(TruncBinom(*TruncatedSumQuery::Create(n, 0, n, 0.37)), 1.0,
                1e-14);
  }
}

TEST(UpperTruncTest, MatchesOracleAndValidates) {
  absl::StatusOr<double> value = UpperTrunc(30, 12, 0.45);
  ASSERT_TRUE(value.ok());
  EXPECT_NEAR(*value, Exact(30, 0, 12, 0.45), 1e-15);
  EXPECT_FALSE(UpperTrunc(30, 31, 0.45).ok());
  EXPECT_FALSE(UpperTrunc(30, -1, 0.45).ok());
}

TEST(CumulativeRowTest, AgreesWithPointQueries) {
  const std::vector<double> row = CumulativeRow(200, 0.3);
  ASSERT_EQ(row.size(), 201u);
  for (int64_t j = 0; j <= 200; j += 7) {
    EXPECT_NEAR(row[j], Exact(200, 0, j, 0.3), 1e-14) << j;
  }
  EXPECT_EQ(row.back(), 1.0);
}

TEST(HalfPointTest, BoundaryConventions) {
  EXPECT_EQ(HalfPointTrunc(10, -6, 0.3), 0.0);
  EXPECT_EQ(HalfPointTrunc(10, 5, 0.3), 1.0);
  EXPECT_NEAR(HalfPointTrunc(11, 0, 0.3), Exact(11, 0, 6, 0.3), 1e-15);
  EXPECT_NEAR(HalfPointTrunc(11, -2, 0.3), Exact(11, 0, 4, 0.3), 1e-15);
}

TEST(SuccessProbabilityTest, AtMostHalfTheLabelsFlip) {
  for (int64_t n : {1, 2, 9, 10, 101, 1000}) {
    for (double epsilon : {0.1, 1.5, 4.0}) {
      const double p = static_cast<double>(oracle::FlipProbability(epsilon, 1));
      EXPECT_NEAR(SuccessProbability(n, *PrivacyParams::Create(epsilon)),
                  Exact(n, 0, n / 2, p), 1e-13)
          << "n=" << n << " epsilon=" << epsilon;
    }
  }
}

TEST(HoeffdingTest, MatchesClosedFormAndStaysBelowExact) {
  for (int64_t n : {10, 50, 100, 1000}) {
    for (double p : {0.05, 0.2, 0.321, 0.45}) {
      for (int64_t j = 0; j <= n; j += std::max<int64_t>(1, n / 25)) {
        const double bound = HoeffdingLowerBound(n, static_cast<double>(j), p);
        EXPECT_NEAR(bound,
                    static_cast<double>(oracle::HoeffdingLowerBound(n, j, p)),
                    1e-15);
        EXPECT_LE(bound, Exact(n, 0, j, p) + 1e-15)
            << "n=" << n << " p=" << p << " j=" << j;
      }
    }
  }
}

TEST(HoeffdingTest, VacuousBelowTheMean) {
  EXPECT_EQ(HoeffdingLowerBound(100, 20.0, 0.3), 0.0);
  EXPECT_EQ(HoeffdingLowerBound(100, 30.0, 0.3), 0.0);
}

TEST(NormalApproxTest, OneSigmaWindow) {
  // sd = 50 here, so [np - 10, np + 10] spans 0.2 sigma either side.
  absl::StatusOr<double> mass =
      NormalApprox(*TruncatedSumQuery::Create(10'000, 4990, 5010, 0.5));
  ASSERT_TRUE(mass.ok());
  EXPECT_NEAR(*mass, std::erf(0.2 / std::sqrt(2.0)), 1e-12);
  // sd = 8 around np = 80.
  absl::StatusOr<double> one_sigma =
      NormalApprox(*TruncatedSumQuery::Create(400, 72, 88, 0.2));
  ASSERT_TRUE(one_sigma.ok());
  EXPECT_NEAR(*one_sigma, std::erf(1.0 / std::sqrt(2.0)), 1e-12);
  EXPECT_GE(*one_sigma, 0.68);
}

TEST(NormalApproxTest, ApproachesExactValueForLargeN) {
  const TruncatedSumQuery query =
      *TruncatedSumQuery::Create(100'000, 0, 32'200, 0.321);
  absl::StatusOr<double> approx =
      NormalApprox(query, {.continuity_correction = true});
  ASSERT_TRUE(approx.ok());
  EXPECT_NEAR(*approx, TruncBinom(query), 2e-3);
}

TEST(NormalApproxTest, ContinuityCorrectionHelpsForSmallN) {
  const TruncatedSumQuery query = *TruncatedSumQuery::Create(10, 0, 4, 0.3);
  const double exact = Exact(10, 0, 4, 0.3);
  const double plain = *NormalApprox(query);
  const double corrected =
      *NormalApprox(query, {.continuity_correction = true});
  EXPECT_LT(std::abs(corrected - exact), std::abs(plain - exact));
  EXPECT_LT(std::abs(corrected - exact), 0.1);
}

TEST(NormalApproxTest, DegenerateVarianceFails) {
  EXPECT_EQ(
      NormalApprox(*TruncatedSumQuery::Create(10, 0, 4, 0.0)).status().code(),
      absl::StatusCode::kFailedPrecondition);
}

TEST(ConcentrationTest, MassGrowsWithN) {
  double previous = 0.0;
  for (int64_t n : {100, 500, 1000, 2000, 10'000}) {
    absl::StatusOr<double> mass = ConcentrationCheck(n, 0.321, 0.05);
    ASSERT_TRUE(mass.ok());
    EXPECT_GT(*mass, previous);
    previous = *mass;
    const int64_t lower = static_cast<int64_t>(std::ceil(n * 0.271));
    const int64_t upper = static_cast<int64_t>(std::floor(n * 0.371));
    EXPECT_NEAR(*mass, Exact(n, lower, upper, 0.321), 1e-12);
  }
  EXPECT_GE(*ConcentrationCheck(2000, 0.321, 0.05), 0.99);
}

TEST(ConcentrationTest, RejectsBadWindow) {
  EXPECT_FALSE(ConcentrationCheck(100, 0.3, 0.0).ok());
  EXPECT_FALSE(ConcentrationCheck(100, 0.3, 1.5).ok());
  EXPECT_FALSE(ConcentrationCheck(0, 0.3, 0.1).ok());
}

ScanGrid Grid(int64_t n_max, std::vector<int64_t> offsets) {
  ScanGrid grid;
  grid.n_min = 1;
  grid.n_max = n_max;
  grid.p_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  grid.offsets = std::move(offsets);
  return grid;
}

TEST(ScanTest, FixedThresholdDecreasesInN) {
  absl::StatusOr<MonotonicityReport> report =
      ScanMonotonicity(1, Grid(200, {0, 1, 5, 20, 60}));
  ASSERT_TRUE(report.ok());
  EXPECT_GT(report->comparisons, 0);
  EXPECT_TRUE(report->Held());
}

TEST(ScanTest, FixedDeficitIncreasesInN) {
  absl::StatusOr<MonotonicityReport> report =
      ScanMonotonicity(2, Grid(200, {0, 1, 5, 20, 60}));
  ASSERT_TRUE(report.ok());
  EXPECT_TRUE(report->Held());
}

TEST(ScanTest, SameParityThresholdRuleHolds) {
  absl::StatusOr<MonotonicityReport> report =
      ScanMonotonicity(3, Grid(200, {-3, -2, -1, 0, 1, 2, 3}));
  ASSERT_TRUE(report.ok());
  EXPECT_TRUE(report->Held());
  EXPECT_TRUE(report->parity_split);
}

TEST(ScanTest, SameParityRuleAgainstOracle) {
  // Independent restatement: for n -> n + 2 with j = ceil(n/2) + k, the
  // partial sum grows when p <= (n - j) / (n + 1) and shrinks otherwise.
  for (double p : {0.2, 0.45, 0.5, 0.55, 0.8}) {
    for (int64_t n = 2; n <= 60; ++n) {
      for (int64_t k = -2; k <= 2; ++k) {
        const int64_t j = (n + 1) / 2 + k;
        const int64_t j2 = (n + 3) / 2 + k;
        if (j < 0 || j > n || j2 > n + 2) continue;
        const double before = Exact(n, 0, j, p);
        const double after = Exact(n + 2, 0, j2, p);
        const double threshold = static_cast<double>(n - j) / (n + 1);
        if (p <= threshold) {
          EXPECT_GE(after, before - 1e-15) << n << " " << k << " " << p;
        } else {
          EXPECT_LE(after, before + 1e-15) << n << " " << k << " " << p;
        }
      }
    }
  }
}

TEST(ScanTest, MonotoneInP) {
  ScanGrid grid = Grid(120, {});
  grid.p_grid.push_back(0.0);
  grid.p_grid.push_back(1.0);
  absl::StatusOr<MonotonicityReport> report = ScanMonotonicity(4, grid);
  ASSERT_TRUE(report.ok());
  EXPECT_TRUE(report->Held());
}

TEST(ScanTest, RejectsBadArguments) {
  EXPECT_FALSE(ScanMonotonicity(7, Grid(20, {0})).ok());
  EXPECT_FALSE(ScanMonotonicity(1, Grid(20, {})).ok());
  ScanGrid bad = Grid(20, {0});
  bad.p_grid = {1.2};
  EXPECT_FALSE(ScanMonotonicity(1, bad).ok());
}

TEST(ScanTest, JsonReport) {
  absl::StatusOr<MonotonicityReport> report =
      ScanMonotonicity(3, Grid(30, {0}));
  ASSERT_TRUE(report.ok());
  const nlohmann::json json =
      nlohmann::json::parse(MonotonicityReportJson(*report));
  EXPECT_EQ(json["property"], 3);
  EXPECT_EQ(json["held"], true);
  EXPECT_EQ(json["violation_count"], 0);
  EXPECT_EQ(json["exception_count"].get<size_t>(), report->exceptions.size());
}

TEST(HalfPointLimitTest, TendsToOneHalfOrZero) {
  EXPECT_GT(HalfPointTrunc(100'000, 0, 0.45), 1.0 - 1e-12);
  EXPECT_LT(HalfPointTrunc(100'000, 0, 0.55), 1e-12);
  EXPECT_NEAR(HalfPointTrunc(100'000, 0, 0.5), 0.5, 5e-3);
  double previous_gap = 1.0;
  for (int64_t n : {100, 1000, 10'000, 100'000}) {
    const double gap = std::abs(HalfPointTrunc(n, 0, 0.5) - 0.5);
    EXPECT_LT(gap, previous_gap);
    previous_gap = gap;
  }
}

TEST(InterchangeTest, FindsTheLastViolation) {
  for (double p : {0.1, 0.3, 0.7, 0.9}) {
    absl::StatusOr<InterchangeResult> result = InterchangePoint(10, 0, p);
    ASSERT_TRUE(result.ok());
    EXPECT_FALSE(result->cap_exceeded);
    const double base = Exact(10, 0, 5, p);
    // Every r beyond the reported point satisfies the inequality, checked
    // well past the search horizon.
    for (int64_t r = result->interchange + 1; r <= 400; ++r) {
      const int64_t m = 10 + r;
      const double value = Exact(m, 0, (m + 1) / 2, p);
      if (p < 0.5) {
        EXPECT_GE(value, base) << "p=" << p << " r=" << r;
      } else {
        EXPECT_LE(value, base) << "p=" << p << " r=" << r;
      }
    }
    if (result->interchange > 0) {
      const int64_t m = 10 + result->interchange;
      const double value = Exact(m, 0, (m + 1) / 2, p);
      EXPECT_TRUE(p < 0.5 ? value < base : value > base);
    }
  }
}

TEST(InterchangeTest, SmallPInterchangesEarly) {
  absl::StatusOr<InterchangeResult> result = InterchangePoint(10, 0, 0.1);
  ASSERT_TRUE(result.ok());
  EXPECT_LE(result->interchange, 2);
}

TEST(InterchangeTest, RejectsHalf) {
  EXPECT_FALSE(InterchangePoint(10, 0, 0.5).ok());
  EXPECT_FALSE(InterchangePoint(0, 0, 0.3).ok());
}

TEST(DegradationTest, HistogramsSumToOne) {
  absl::StatusOr<std::string> csv =
      DegradationCsv(*PrivacyParams::Create(1.5), {100, 1000}, 20, 0.05);
  ASSERT_TRUE(csv.ok());
  std::vector<std::string> lines = absl::StrSplit(*csv, '\n');
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines[0], "n,flip_rate_bin,probability");
  std::map<int64_t, double> totals;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields = absl::StrSplit(lines[i], ',');
    if (fields.size() != 3 || fields[0].empty() || fields[0][0] == '#') {
      continue;
    }
    // strtod, unlike stod, accepts subnormal tail values.
    totals[std::stoll(fields[0])] += std::strtod(fields[2].c_str(), nullptr);
  }
  ASSERT_EQ(totals.size(), 2u);
  for (const auto& [n, total] : totals) EXPECT_NEAR(total, 1.0, 1e-9) << n;
}

TEST(DegradationTest, RejectsBadBins) {
  EXPECT_FALSE(
      DegradationCsv(*PrivacyParams::Create(1.5), {100}, 0, 0.05).ok());
}

}  // namespace
}  // namespace labeldp
