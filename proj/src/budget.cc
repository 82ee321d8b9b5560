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
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "em_core.h"
#include "nlohmann/json.hpp"
#include "truncbin.h"

namespace labeldp {
namespace {

constexpr std::string_view kGolden999 =
    "n,50%,45%,40%,35%,30%,25%,20%,15%,10%,5%\n"
    "100,1.562,2.049,2.600,3.255,4.098,5.360,8.487,,,\n"
    "1000,0.472,0.884,1.316,1.779,2.292,2.884,3.610,4.597,6.293,\n"
    "10000,0.149,0.552,0.967,1.404,1.875,2.401,3.014,3.777,4.847,6.857\n"
    "100000,0.047,0.449,0.860,1.290,1.751,2.260,2.847,3.563,4.529,6.151\n"
    "1000000,0.015,0.416,0.826,1.254,1.712,2.217,2.796,3.499,4.436,5.969\n";

constexpr std::string_view kGolden95 =
    "n,50%,45%,40%,35%,30%,25%,20%,15%,10%,5%\n"
    "100,0.999,1.438,1.913,2.444,3.065,3.844,4.950,7.123,,\n"
    "1000,0.310,0.717,1.139,1.588,2.078,2.634,3.297,4.155,5.458,8.944\n"
    "10000,0.098,0.501,0.913,1.347,1.813,2.330,2.929,3.668,4.683,6.476\n"
    "100000,0.031,0.433,0.843,1.272,1.732,2.239,2.821,3.531,4.482,6.058\n"
    "1000000,0.010,0.411,0.821,1.249,1.706,2.210,2.788,3.488,4.422,5.941\n";

// Hoeffding slack s = sqrt(-n ln(1 - P) / 2).
double HoeffdingSlack(int64_t n, double confidence) {
  return std::sqrt(-static_cast<double>(n) * std::log1p(-confidence) / 2.0);
}

std::string FormatCell(const BudgetResult& cell) {
  if (!cell.applicable()) return "";
  return absl::StrFormat("%.3f", RoundHalfUp3(*cell.epsilon_min));
}

}  // namespace

absl::StatusOr<BudgetQuery> BudgetQuery::Create(int64_t n, double flip_fraction,
                                                double confidence,
                                                double sensitivity) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  if (!(flip_fraction > 0.0 && flip_fraction <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("flip fraction must lie in (0, 1], got ", flip_fraction));
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("confidence must lie in (0, 1), got ", confidence));
  }
  if (!std::isfinite(sensitivity) || sensitivity <= 0.0) {
    return absl::InvalidArgumentError("sensitivity must be positive");
  }
  return BudgetQuery{n, flip_fraction, confidence, sensitivity};
}

BudgetResult MinBudget(const BudgetQuery& query) {
  const double n = static_cast<double>(query.n);
  const double j = query.flip_fraction * n;
  const double s = HoeffdingSlack(query.n, query.confidence);
  if (!(j > s)) return BudgetResult{};
  return BudgetResult{2.0 * query.sensitivity *
                      std::log((n - j + s) / (j - s))};
}

BudgetResult HalfFlipBudget(int64_t n, double sensitivity) {
  const double root =
      2.0 * std::sqrt(1.5 * std::numbers::ln10 / static_cast<double>(n));
  if (!(1.0 - root > 0.0)) return BudgetResult{};
  return BudgetResult{2.0 * sensitivity *
                      std::log((1.0 + root) / (1.0 - root))};
}

int64_t FlipAllowance(int64_t n, double flip_fraction) {
  const double x = flip_fraction * static_cast<double>(n);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) {
    return static_cast<int64_t>(nearest);
  }
  return static_cast<int64_t>(std::floor(x));
}

absl::StatusOr<SuccessForBudget> SuccessAtBudget(int64_t n, double epsilon,
                                                 double sensitivity,
                                                 double flip_fraction) {
  absl::StatusOr<PrivacyParams> params =
      PrivacyParams::Create(epsilon, sensitivity);
  if (!params.ok()) return params.status();
  if (n < 1 || !(flip_fraction > 0.0 && flip_fraction <= 1.0)) {
    return absl::InvalidArgumentError(
        "need n >= 1 and flip fraction in (0, 1]");
  }
  const double p = FlipProbability(*params).flip_probability();
  const int64_t j = std::min(FlipAllowance(n, flip_fraction), n);
  return SuccessForBudget{TruncBinom(TruncatedSumQuery{n, 0, j, p}),
                          HoeffdingLowerBound(n, static_cast<double>(j), p)};
}

std::vector<int64_t> DefaultTableSizes() {
  return {100, 1'000, 10'000, 100'000, 1'000'000};
}

std::vector<int> DefaultFlipPercents() {
  return {50, 45, 40, 35, 30, 25, 20, 15, 10, 5};
}

BudgetTable ComputeBudgetTable(double confidence,
                               const std::vector<int64_t>& n_values,
                               const std::vector<int>& flip_percents,
                               double sensitivity) {
  BudgetTable table{confidence, sensitivity, n_values, flip_percents, {}};
  for (int64_t n : n_values) {
    std::vector<BudgetResult>& row = table.cells.emplace_back();
    for (int percent : flip_percents) {
      row.push_back(
          MinBudget(BudgetQuery{n, percent / 100.0, confidence, sensitivity}));
    }
  }
  return table;
}

double RoundHalfUp3(double value) {
  return std::floor(value * 1000.0 + 0.5) / 1000.0;
}

std::string BudgetTableCsv(const BudgetTable& table) {
  std::string out = "n";
  for (int percent : table.flip_percents) {
    absl::StrAppend(&out, ",", percent, "%");
  }
  out += "\n";
  for (size_t r = 0; r < table.n_values.size(); ++r) {
    absl::StrAppend(&out, table.n_values[r]);
    for (const BudgetResult& cell : table.cells[r]) {
      absl::StrAppend(&out, ",", FormatCell(cell));
    }
    out += "\n";
  }
  return out;
}

std::string BudgetTableJson(const BudgetTable& table) {
  nlohmann::ordered_json json;
  json["confidence"] = table.confidence;
  json["sensitivity"] = table.sensitivity;
  json["flip_percents"] = table.flip_percents;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (size_t r = 0; r < table.n_values.size(); ++r) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (size_t c = 0; c < table.flip_percents.size(); ++c) {
      const BudgetResult& cell = table.cells[r][c];
      nlohmann::ordered_json entry;
      entry["flip_percent"] = table.flip_percents[c];
      entry["status"] = cell.applicable() ? "APPLICABLE" : "NOT_APPLICABLE";
      if (cell.applicable()) {
        entry["epsilon_min"] = *cell.epsilon_min;
        entry["epsilon_min_rounded"] = RoundHalfUp3(*cell.epsilon_min);
      }
      cells.push_back(std::move(entry));
    }
    rows.push_back({{"n", table.n_values[r]}, {"cells", std::move(cells)}});
  }
  json["rows"] = std::move(rows);
  return json.dump(2) + "\n";
}

std::string BudgetTableText(const BudgetTable& table) {
  std::string out = absl::StrFormat(
      "Minimum privacy budget, confidence %g, sensitivity %g "
      "(blank = not applicable)\n",
      table.confidence, table.sensitivity);
  absl::StrAppendFormat(&out, "%9s", "n \\ flip");
  for (int percent : table.flip_percents) {
    absl::StrAppendFormat(&out, " %7s", absl::StrCat(percent, "%"));
  }
  out += "\n";
  for (size_t r = 0; r < table.n_values.size(); ++r) {
    absl::StrAppendFormat(&out, "%9d", table.n_values[r]);
    for (const BudgetResult& cell : table.cells[r]) {
      absl::StrAppendFormat(&out, " %7s", FormatCell(cell));
    }
    out += "\n";
  }
  return out;
}

std::string_view GoldenTableCsv(double confidence) {
  if (confidence == 0.999) return kGolden999;
  if (confidence == 0.95) return kGolden95;
  return {};
}

absl::StatusOr<TableDiff> CompareWithGolden(const BudgetTable& table,
                                            std::string_view golden_csv,
                                            double tolerance) {
  std::vector<absl::string_view> lines =
      absl::StrSplit(absl::string_view(golden_csv.data(), golden_csv.size()),
                     '\n', absl::SkipWhitespace());
  if (lines.size() != table.n_values.size() + 1) {
    return absl::DataLossError(
        absl::StrFormat("golden table has %d rows, expected %d",
                        lines.size() - 1, table.n_values.size()));
  }
  TableDiff diff;
  for (size_t r = 0; r < table.n_values.size(); ++r) {
    std::vector<absl::string_view> fields = absl::StrSplit(lines[r + 1], ',');
    if (fields.size() != table.flip_percents.size() + 1) {
      return absl::DataLossError(
          absl::StrFormat("golden row %d has %d fields", r + 1, fields.size()));
    }
    int64_t n = 0;
    if (!absl::SimpleAtoi(absl::StripAsciiWhitespace(fields[0]), &n) ||
        n != table.n_values[r]) {
      return absl::DataLossError(
          absl::StrCat("golden row ", r + 1, " is for n=", fields[0],
                       ", expected ", table.n_values[r]));
    }
    for (size_t c = 0; c < table.flip_percents.size(); ++c) {
      const absl::string_view field = absl::StripAsciiWhitespace(fields[c + 1]);
      const BudgetResult& cell = table.cells[r][c];
      const std::string where = absl::StrFormat(
          "n=%d flip=%d%%", table.n_values[r], table.flip_percents[c]);
      ++diff.compared_cells;
      if (field.empty()) {
        if (cell.applicable()) {
          diff.mismatches.push_back(
              absl::StrFormat("%s: golden empty, computed %.3f", where,
                              RoundHalfUp3(*cell.epsilon_min)));
        }
        continue;
      }
      double golden = 0.0;
      if (!absl::SimpleAtod(field, &golden)) {
        return absl::DataLossError(
            absl::StrCat("unparsable golden cell '", field, "' at ", where));
      }
      if (!cell.applicable()) {
        diff.mismatches.push_back(absl::StrFormat(
            "%s: golden %.3f, computed NOT_APPLICABLE", where, golden));
        continue;
      }
      const double rounded = RoundHalfUp3(*cell.epsilon_min);
      // 1e-9 absorbs the binary representation of 3-decimal values.
      if (std::abs(rounded - golden) > tolerance + 1e-9) {
        diff.mismatches.push_back(absl::StrFormat(
            "%s: golden %.3f, computed %.3f", where, golden, rounded));
      }
    }
  }
  return diff;
}

}  // namespace labeldp
