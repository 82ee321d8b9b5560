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

#include "checks.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <tuple>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "budget.h"
#include "em_core.h"
#include "label_io.h"
#include "losses.h"
#include "nlohmann/json.hpp"
#include "numeric.h"
#include "rng.h"
#include "truncbin.h"

namespace labeldp {
namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

Outcome Fail(const absl::Status& status) {
  return Outcome{false, std::string(status.message())};
}

std::vector<double> TenthsGrid() {
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  return grid;
}

Outcome CheckFlipProbability() {
  const double p =
      FlipProbability(*PrivacyParams::Create(1.5)).flip_probability();
  return Outcome{std::abs(p - 0.321) <= 5e-4,
                 absl::StrFormat("p(1.5, 1) = %.6f", p)};
}

Outcome CheckScoreDistribution(RecursionVariant variant) {
  const ScoreDistributionOptions options{.variant = variant};
  double worst = 0.0;
  for (int64_t n : {10, 100, 1000}) {
    for (double epsilon : {0.5, 1.5, 3.0}) {
      for (double sensitivity : {1.0, 3.0}) {
        const PrivacyParams params =
            *PrivacyParams::Create(epsilon, sensitivity);
        absl::StatusOr<ScoreDistribution> dist =
            ComputeScoreDistribution(n, params, options);
        if (!dist.ok()) return Fail(dist.status());
        const long double c = params.ScoreExponent();
        const long double log_norm = n * SoftplusLong(c);
        for (int64_t q = 0; q <= n; ++q) {
          const long double closed =
              std::exp(LogBinomialCoefficient(n, q) + q * c - log_norm);
          worst = std::max(
              worst,
              static_cast<double>(std::fabs(
                  static_cast<long double>(dist->Probability(q)) - closed)));
        }
      }
    }
  }
  double defect = 0.0;
  for (int64_t n : {1'000, 10'000, 100'000, 1'000'000}) {
    absl::StatusOr<ScoreDistribution> dist =
        ComputeScoreDistribution(n, *PrivacyParams::Create(1.5), options);
    if (!dist.ok()) return Fail(dist.status());
    defect = std::max(defect, std::abs(LogSumExp(dist->log_probs)));
  }
  return Outcome{worst <= 1e-12 && defect <= 1e-10,
                 absl::StrFormat("max |recursion - closed form| = %.3g; "
                                 "max normalization defect = %.3g",
                                 worst, defect)};
}

Outcome CheckDpBound() {
  double worst_gap = 0.0;
  bool within = true;
  for (int64_t n = 1; n <= 6; ++n) {
    for (double epsilon : {0.1, 1.0, 5.0}) {
      const PrivacyParams params = *PrivacyParams::Create(epsilon);
      absl::StatusOr<double> ratio = VerifyDp(n, params);
      if (!ratio.ok()) return Fail(ratio.status());
      within = within && *ratio <= std::exp(epsilon) * (1.0 + 1e-12);
      worst_gap = std::max(worst_gap,
                           std::abs(*ratio - std::exp(params.ScoreExponent())));
    }
  }
  return Outcome{within && worst_gap <= 1e-9,
                 absl::StrFormat("max ratio <= e^eps: %s; "
                                 "max |ratio - e^(eps/(2 delta))| = %.3g",
                                 within ? "yes" : "no", worst_gap)};
}

Outcome CheckEmRrIdentity(RecursionVariant variant) {
  double worst = 0.0;
  for (int64_t n = 1; n <= kMaxExhaustiveNeighbors; ++n) {
    for (double epsilon : {0.5, 1.5, 3.0}) {
      for (double sensitivity : {1.0, 3.0}) {
        absl::StatusOr<double> diff = EmRrEquivalenceCheck(
            n, *PrivacyParams::Create(epsilon, sensitivity), variant);
        if (!diff.ok()) return Fail(diff.status());
        worst = std::max(worst, *diff);
      }
    }
  }
  return Outcome{worst <= 1e-12,
                 absl::StrFormat("max per-output difference = %.3g", worst)};
}

Outcome CheckSuccessConsistency() {
  double worst = 0.0;
  std::vector<int64_t> sizes;
  for (int64_t n = 1; n <= 60; ++n) sizes.push_back(n);
  sizes.insert(sizes.end(), {101, 1000, 10'001});
  for (int64_t n : sizes) {
    for (double epsilon : {0.5, 1.5, 3.0}) {
      const PrivacyParams params = *PrivacyParams::Create(epsilon);
      absl::StatusOr<ScoreDistribution> dist =
          ComputeScoreDistribution(n, params);
      if (!dist.ok()) return Fail(dist.status());
      CompensatedSum tail;
      for (int64_t q = (n + 1) / 2; q <= n; ++q) {
        tail.Add(dist->Probability(q));
      }
      worst = std::max(worst,
                       std::abs(SuccessProbability(n, params) - tail.Total()));
    }
  }
  return Outcome{
      worst <= 1e-12,
      absl::StrFormat("max |S(n, floor(n/2)) - score tail| = %.3g", worst)};
}

Outcome CheckScan(int property_id, std::vector<int64_t> offsets) {
  ScanGrid grid;
  grid.n_min = property_id == 3 ? 2 : 1;
  grid.n_max = 200;
  grid.p_grid = TenthsGrid();
  grid.offsets = std::move(offsets);
  if (property_id == 4) {
    grid.p_grid.insert(grid.p_grid.begin(), 0.0);
    grid.p_grid.push_back(1.0);
  }
  absl::StatusOr<MonotonicityReport> report =
      ScanMonotonicity(property_id, grid);
  if (!report.ok()) return Fail(report.status());
  std::string detail =
      absl::StrFormat("%d comparisons, %d violations", report->comparisons,
                      report->violations.size());
  if (property_id == 3) {
    absl::StrAppendFormat(&detail, ", %d cross-parity exceptions",
                          report->exceptions.size());
  }
  if (!report->violations.empty()) {
    const ScanFinding& f = report->violations.front();
    absl::StrAppendFormat(&detail, "; first at n=%d p=%g offset=%d (%s)", f.n,
                          f.p, f.offset, f.note);
  }
  return Outcome{report->Held(), detail};
}

Outcome CheckHalfPointLimits() {
  constexpr double kRoundingFloor = 1e-12;
  bool ok = true;
  std::string detail;
  const std::vector<int64_t> sizes = {100, 1'000, 10'000, 100'000};
  for (double p : {0.3, 0.45, 0.5, 0.55, 0.7}) {
    const double limit = p < 0.5 ? 1.0 : (p > 0.5 ? 0.0 : 0.5);
    double previous = 2.0;
    for (int64_t n : sizes) {
      const double gap = std::abs(HalfPointTrunc(n, 0, p) - limit);
      // Gaps at rounding level no longer carry a trend.
      if (!(gap < previous) && gap > kRoundingFloor) ok = false;
      previous = gap;
    }
    const double tolerance = p == 0.5 ? 5e-3 : 1e-6;
    if (previous > tolerance) ok = false;
    absl::StrAppendFormat(&detail, "%sp=%g: |S - %g| = %.3g at n=1e5",
                          detail.empty() ? "" : "; ", p, limit, previous);
  }
  return Outcome{ok, detail};
}

Outcome CheckConcentration() {
  double previous = -1.0;
  bool increasing = true;
  double at_2000 = 0.0;
  for (int64_t n : {100, 1'000, 2'000, 10'000}) {
    absl::StatusOr<double> mass = ConcentrationCheck(n, 0.321, 0.05);
    if (!mass.ok()) return Fail(mass.status());
    increasing = increasing && *mass > previous;
    previous = *mass;
    if (n == 2'000) at_2000 = *mass;
  }
  return Outcome{increasing && at_2000 >= 0.99,
                 absl::StrFormat("mass within +/-0.05 of p=0.321 at n=2000: "
                                 "%.6f; increasing in n: %s",
                                 at_2000, increasing ? "yes" : "no")};
}

Outcome CheckInterchange() {
  std::string detail;
  bool ok = true;
  for (double p : {0.1, 0.3, 0.49, 0.7, 0.9}) {
    absl::StatusOr<InterchangeResult> result = InterchangePoint(10, 0, p);
    if (!result.ok()) return Fail(result.status());
    ok = ok && !result->cap_exceeded;
    if (p == 0.1) ok = ok && result->interchange <= 2;
    absl::StrAppendFormat(&detail, "%sp=%g: R=%d", detail.empty() ? "" : "; ",
                          p, result->interchange);
  }
  return Outcome{ok, detail};
}

Outcome CheckHoeffding() {
  int64_t checked = 0;
  int64_t failures = 0;
  for (double p : TenthsGrid()) {
    for (int64_t n = 1; n <= 200; ++n) {
      const std::vector<double> row = CumulativeRow(n, p);
      for (int64_t j = 0; j <= n; ++j) {
        const double bound = HoeffdingLowerBound(n, static_cast<double>(j), p);
        if (bound <= 0.0) continue;
        ++checked;
        if (bound > row[j] + 1e-12) ++failures;
      }
    }
  }
  return Outcome{failures == 0 && checked > 0,
                 absl::StrFormat("%d non-vacuous points, %d above the exact "
                                 "value",
                                 checked, failures)};
}

Outcome CheckHalfFlipBudget() {
  const std::pair<int64_t, double> expected[] = {
      {100, 1.562}, {1000, 0.472}, {10000, 0.149}};
  bool ok = true;
  std::string detail;
  for (const auto& [n, value] : expected) {
    const BudgetResult result = HalfFlipBudget(n);
    const double got = result.epsilon_min.value_or(-1.0);
    ok = ok && result.applicable() && std::abs(got - value) <= 1e-3;
    absl::StrAppendFormat(&detail, "%sn=%d: %.4f", detail.empty() ? "" : "; ",
                          n, got);
  }
  return Outcome{ok, detail};
}

absl::StatusOr<std::string> GoldenText(const CheckOptions& options,
                                       double confidence) {
  if (options.golden_dir.empty()) {
    return std::string(GoldenTableCsv(confidence));
  }
  return ReadTextFile(
      absl::StrCat(options.golden_dir, "/",
                   confidence == 0.999 ? "table_999.csv" : "table_95.csv"));
}

Outcome CheckGoldenTable(const CheckOptions& options, double confidence) {
  absl::StatusOr<std::string> golden = GoldenText(options, confidence);
  if (!golden.ok()) return Fail(golden.status());
  const BudgetTable table = ComputeBudgetTable(confidence, DefaultTableSizes(),
                                               DefaultFlipPercents());
  absl::StatusOr<TableDiff> diff = CompareWithGolden(table, *golden);
  if (!diff.ok()) return Fail(diff.status());
  std::string detail =
      absl::StrFormat("%d cells compared, %d mismatches", diff->compared_cells,
                      diff->mismatches.size());
  if (!diff->Matches()) absl::StrAppend(&detail, "; ", diff->mismatches[0]);
  return Outcome{diff->Matches(), detail};
}

Outcome CheckBudgetRoundTrip() {
  int64_t cells = 0;
  double worst_margin = 1.0;
  for (double confidence : {0.999, 0.95}) {
    const BudgetTable table = ComputeBudgetTable(
        confidence, DefaultTableSizes(), DefaultFlipPercents());
    for (size_t r = 0; r < table.n_values.size(); ++r) {
      for (size_t c = 0; c < table.flip_percents.size(); ++c) {
        const BudgetResult& cell = table.cells[r][c];
        if (!cell.applicable()) continue;
        absl::StatusOr<SuccessForBudget> success =
            SuccessAtBudget(table.n_values[r], *cell.epsilon_min, 1.0,
                            table.flip_percents[c] / 100.0);
        if (!success.ok()) return Fail(success.status());
        ++cells;
        worst_margin = std::min(worst_margin, success->exact - confidence);
      }
    }
  }
  return Outcome{worst_margin >= 0.0,
                 absl::StrFormat("%d applicable cells; min exact success "
                                 "minus target = %.3g",
                                 cells, worst_margin)};
}

Outcome CheckLossGradients() {
  std::vector<LossSpec> losses = TrainableLosses();
  losses.push_back(*LossSpec::Create(LossKind::kBarrier, 200.0, 50.0));
  constexpr double kStep = 1e-5;
  double worst = 0.0;
  int64_t points = 0;
  for (const LossSpec& loss : losses) {
    const double scale =
        loss.kind() == LossKind::kBarrier ? 3.0 * loss.r() : 8.0;
    const std::vector<double> kinks = LossKinks(loss);
    for (int i = 0; i <= 4000; ++i) {
      const double z = -scale + 2.0 * scale * (i + 0.37) / 4001.0;
      bool near_kink = false;
      for (double kink : kinks) near_kink |= std::abs(z - kink) <= 1e-3;
      if (near_kink) continue;
      const double grad = *LossGrad(loss, z);
      const double fd =
          (LossValue(loss, z + kStep) - LossValue(loss, z - kStep)) /
          (2.0 * kStep);
      worst =
          std::max(worst, std::abs(grad - fd) / std::max(1.0, std::abs(grad)));
      ++points;
    }
  }
  return Outcome{worst <= 1e-6,
                 absl::StrFormat("%d points over %d losses; max relative "
                                 "error = %.3g",
                                 points, losses.size(), worst)};
}

Outcome CheckBarrierSymmetry() {
  double worst = 0.0;
  std::string detail;
  for (const auto& [b, r] : {std::pair{2.0, 1.0}, std::pair{200.0, 50.0}}) {
    const LossSpec loss = *LossSpec::Create(LossKind::kBarrier, b, r);
    absl::StatusOr<SymmetryReport> report = SymmetryDefect(loss, r, 10'001);
    if (!report.ok()) return Fail(report.status());
    worst = std::max(worst, report->max_defect);
    absl::StrAppendFormat(&detail, "%s%s: C=%g defect=%.3g",
                          detail.empty() ? "" : "; ", loss.ToString(),
                          report->constant, report->max_defect);
  }
  return Outcome{worst <= 1e-9, detail};
}

Outcome CheckBarrierShape() {
  Rng rng = Rng::ForStream(0, StreamTag::kTest, 11);
  int64_t negative = 0;
  int64_t non_convex = 0;
  for (const auto& [b, r] :
       {std::pair{2.0, 1.0}, std::pair{200.0, 50.0}, std::pair{1.5, 0.2}}) {
    const LossSpec loss = *LossSpec::Create(LossKind::kBarrier, b, r);
    const double span = 10.0 * r * b / (b - 1.0);
    for (int i = 0; i < 10'000; ++i) {
      double z[3];
      for (double& v : z) v = span * (2.0 * rng.UniformDouble() - 1.0);
      std::sort(z, z + 3);
      for (double v : z) negative += LossValue(loss, v) < 0.0;
      if (z[2] == z[0]) continue;
      const double chord = ((z[2] - z[1]) * LossValue(loss, z[0]) +
                            (z[1] - z[0]) * LossValue(loss, z[2])) /
                           (z[2] - z[0]);
      const double midpoint = LossValue(loss, 0.5 * (z[0] + z[2]));
      const double mid_chord =
          0.5 * (LossValue(loss, z[0]) + LossValue(loss, z[2]));
      const double slack = 1e-9 * std::max(1.0, chord);
      non_convex +=
          LossValue(loss, z[1]) > chord + slack || midpoint > mid_chord + slack;
    }
  }
  return Outcome{negative == 0 && non_convex == 0,
                 absl::StrFormat("30000 random triples: %d negative values, "
                                 "%d chord violations",
                                 negative, non_convex)};
}

}  // namespace

bool CheckReport::AllPassed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

std::vector<std::string> CheckReport::FailedIds() const {
  std::vector<std::string> ids;
  for (const CheckResult& r : results) {
    if (!r.passed) ids.push_back(r.id);
  }
  return ids;
}

CheckReport RunChecks(const CheckOptions& options) {
  const RecursionVariant variant = options.inject_recursion_fault
                                       ? RecursionVariant::kUnscaledIncrement
                                       : RecursionVariant::kCorrected;
  const std::vector<
      std::tuple<std::string, std::string, std::function<Outcome()>>>
      suite = {
          {"flip_probability", "p = 0.321 at epsilon 1.5",
           CheckFlipProbability},
          {"score_distribution",
           "recursion matches the closed form and normalizes",
           [variant] { return CheckScoreDistribution(variant); }},
          {"dp_bound", "exhaustive neighbor ratio is e^(eps/(2 delta))",
           CheckDpBound},
          {"em_rr_identity",
           "two-step mechanism equals randomized response per output",
           [variant] { return CheckEmRrIdentity(variant); }},
          {"success_consistency",
           "S(n, floor(n/2)) equals the score-distribution tail",
           CheckSuccessConsistency},
          {"property_1", "S(n, j) decreasing in n for fixed j",
           [] { return CheckScan(1, {0, 1, 2, 3, 5, 10, 20}); }},
          {"property_2", "S(n, n - k) increasing in n for fixed k",
           [] { return CheckScan(2, {0, 1, 2, 3, 5, 10, 20}); }},
          {"property_3", "same-parity steps follow the threshold rule",
           [] { return CheckScan(3, {-3, -2, -1, 0, 1, 2, 3}); }},
          {"property_4", "S(n, j) decreasing in p",
           [] { return CheckScan(4, {}); }},
          {"property_5", "S(n, ceil(n/2)) tends to 1, 1/2 or 0",
           CheckHalfPointLimits},
          {"property_6", "flip rate concentrates around p", CheckConcentration},
          {"interchange", "interchange points exist below the search cap",
           CheckInterchange},
          {"hoeffding", "Hoeffding bound never exceeds the exact value",
           CheckHoeffding},
          {"half_flip_budget", "closed-form budget spot values",
           CheckHalfFlipBudget},
          {"table_999", "99.9% budget table matches the golden copy",
           [&options] { return CheckGoldenTable(options, 0.999); }},
          {"table_95", "95% budget table matches the golden copy",
           [&options] { return CheckGoldenTable(options, 0.95); }},
          {"budget_round_trip",
           "exact success at the recommended budget meets the confidence",
           CheckBudgetRoundTrip},
          {"loss_gradients", "gradients match central differences",
           CheckLossGradients},
          {"barrier_symmetry", "barrier hinge is symmetric on [-r, r]",
           CheckBarrierSymmetry},
          {"barrier_shape", "barrier hinge is non-negative and convex",
           CheckBarrierShape},
  };
  CheckReport report;
  for (const auto& [id, description, run] : suite) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome outcome = run();
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    report.results.push_back(CheckResult{id, description, outcome.passed,
                                         outcome.detail, elapsed.count()});
  }
  return report;
}

std::string CheckReportJson(const CheckReport& report) {
  nlohmann::ordered_json json;
  json["passed"] = report.AllPassed();
  json["failed"] = report.FailedIds();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& r : report.results) {
    checks.push_back({{"id", r.id},
                      {"description", r.description},
                      {"passed", r.passed},
                      {"detail", r.detail},
                      {"seconds", r.seconds}});
  }
  json["checks"] = std::move(checks);
  return json.dump(2) + "\n";
}

}  // namespace labeldp
