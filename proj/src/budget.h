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

#ifndef LABELDP_BUDGET_H_
#define LABELDP_BUDGET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace labeldp {

// Minimum-budget question: how much epsilon keeps the fraction of flipped
// labels at or below `flip_fraction` with probability `confidence`?
struct BudgetQuery {
  int64_t n = 0;
  double flip_fraction = 0.5;
  double confidence = 0.999;
  double sensitivity = 1.0;

  static absl::StatusOr<BudgetQuery> Create(int64_t n, double flip_fraction,
                                            double confidence,
                                            double sensitivity = 1.0);
};

struct BudgetResult {
  // Set iff the Hoeffding route applies (j > sqrt(-n ln(1 - P) / 2)).
  std::optional<double> epsilon_min;

  bool applicable() const { return epsilon_min.has_value(); }
};

// epsilon >= 2 Delta ln((n - j + s) / (j - s)), s = sqrt(-n ln(1 - P) / 2),
// j = flip_fraction * n kept real-valued.
BudgetResult MinBudget(const BudgetQuery& query);

// The flip_fraction = 1/2, P = 0.999 special case in its closed form
// 2 Delta ln((1 + 2 sqrt(1.5 ln 10 / n)) / (1 - 2 sqrt(1.5 ln 10 / n))).
BudgetResult HalfFlipBudget(int64_t n, double sensitivity = 1.0);

struct SuccessForBudget {
  double exact = 0.0;
  double hoeffding = 0.0;
};

// Exact S(n, floor(phi n)) and its Hoeffding lower bound at the flip
// probability implied by (epsilon, sensitivity).
absl::StatusOr<SuccessForBudget> SuccessAtBudget(int64_t n, double epsilon,
                                                 double sensitivity,
                                                 double flip_fraction);

// floor(phi * n), robust to decimal fractions such as 0.15 * 100.
int64_t FlipAllowance(int64_t n, double flip_fraction);

struct BudgetTable {
  double confidence = 0.0;
  double sensitivity = 1.0;
  std::vector<int64_t> n_values;
  // Tolerated flip fractions in percent, e.g. 50, 45, ..., 5.
  std::vector<int> flip_percents;
  // cells[row][column] aligned with n_values x flip_percents.
  std::vector<std::vector<BudgetResult>> cells;
};

std::vector<int64_t> DefaultTableSizes();
std::vector<int> DefaultFlipPercents();

BudgetTable ComputeBudgetTable(double confidence,
                               const std::vector<int64_t>& n_values,
                               const std::vector<int>& flip_percents,
                               double sensitivity = 1.0);

// Round half away from zero at 3 decimals (values here are positive).
double RoundHalfUp3(double value);

// First column n, then one column per flip percentage; empty string for
// NOT_APPLICABLE cells, other cells with 3 decimals.
std::string BudgetTableCsv(const BudgetTable& table);
std::string BudgetTableJson(const BudgetTable& table);
std::string BudgetTableText(const BudgetTable& table);

// Reference tables for the published 99.9% and 95% confidence levels, in
// BudgetTableCsv layout. Empty for any other confidence.
std::string_view GoldenTableCsv(double confidence);

struct TableDiff {
  int64_t compared_cells = 0;
  std::vector<std::string> mismatches;

  bool Matches() const { return mismatches.empty(); }
};

// Compares `table`, rounded to 3 decimals, against a golden CSV: every
// filled golden cell must agree within `tolerance` and empty cells must
// coincide.
absl::StatusOr<TableDiff> CompareWithGolden(const BudgetTable& table,
                                            std::string_view golden_csv,
                                            double tolerance = 1e-3);

}  // namespace labeldp

#endif  // LABELDP_BUDGET_H_
