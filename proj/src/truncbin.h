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

#ifndef LABELDP_TRUNCBIN_H_
#define LABELDP_TRUNCBIN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "em_core.h"

namespace labeldp {

// Pr[lower <= Binomial(n, p) <= upper].
struct TruncatedSumQuery {
  int64_t n = 0;
  int64_t lower = 0;
  int64_t upper = 0;
  double p = 0.0;

  static absl::StatusOr<TruncatedSumQuery> Create(int64_t n, int64_t lower,
                                                  int64_t upper, double p);
};

// Exact partial sum, evaluated term by term in log space from the largest
// term outward. Terms more than e^-80 below the largest are dropped, which
// keeps the cost O(sqrt(n)) and the relative error near 1e-15.
double TruncBinom(const TruncatedSumQuery& query);

// S(n, j) = Pr[Binomial(n, p) <= j]. Requires 0 <= j <= n.
absl::StatusOr<double> UpperTrunc(int64_t n, int64_t j, double p);

// S(n, j) for every j in [0, n], by prefix summation of the pmf.
std::vector<double> CumulativeRow(int64_t n, double p);

// S(n, ceil(n / 2) + offset), with S = 0 below the support and 1 above it.
double HalfPointTrunc(int64_t n, int64_t offset, double p);

// Probability that the mechanism keeps at least half the labels:
// S(n, floor(n / 2)) at the flip probability of `params`.
double SuccessProbability(int64_t n, const PrivacyParams& params);

// 1 - exp(-2 (j - n p)^2 / n); 0 when j < n p (the bound is vacuous).
double HoeffdingLowerBound(int64_t n, double j, double p);

struct NormalApproxOptions {
  // Integrate over [lower - 1/2, upper + 1/2] instead of [lower, upper].
  bool continuity_correction = false;
};

// Integral of the N(np, np(1-p)) density over the query window. An
// approximation only; it is loose for small n. Fails for p in {0, 1}.
absl::StatusOr<double> NormalApprox(const TruncatedSumQuery& query,
                                    const NormalApproxOptions& options = {});

// S(n, ceil(n (p - window)), floor(n (p + window))) with both ends clamped
// to [0, n]. Requires 0 < window <= 1.
absl::StatusOr<double> ConcentrationCheck(int64_t n, double p, double window);

// Properties scanned by ScanMonotonicity.
//   1: S(n + 1, j) <= S(n, j) for fixed j.
//   2: S(n + 1, n + 1 - k) >= S(n, n - k) for fixed k.
//   3: S(n + 2, ceil((n+2)/2) + k) against S(n, ceil(n/2) + k), increasing
//      when p <= (n - j) / (n + 1) with j = ceil(n/2) + k and decreasing
//      otherwise. Steps n -> n + 1 that break the trend are recorded as
//      cross-parity exceptions, not violations.
//   4: S(n, j) non-increasing in p.
struct ScanGrid {
  int64_t n_min = 5;
  int64_t n_max = 200;
  std::vector<double> p_grid;
  // Property 1: the fixed j values. Property 2: the fixed k values.
  // Property 3: the offsets k. Ignored by property 4, which scans every j.
  std::vector<int64_t> offsets;
};

struct ScanFinding {
  int64_t n = 0;
  int64_t next_n = 0;
  double p = 0.0;
  int64_t offset = 0;
  double before = 0.0;
  double after = 0.0;
  std::string note;
};

struct MonotonicityReport {
  int property_id = 0;
  std::string grid;
  int64_t comparisons = 0;
  std::vector<ScanFinding> violations;
  // Property 3 only: cross-parity steps that run against the trend.
  std::vector<ScanFinding> exceptions;
  bool parity_split = false;

  bool Held() const { return violations.empty(); }
};

inline constexpr double kScanTolerance = 1e-12;

absl::StatusOr<MonotonicityReport> ScanMonotonicity(int property_id,
                                                    const ScanGrid& grid);

std::string MonotonicityReportJson(const MonotonicityReport& report);

struct InterchangeResult {
  // Smallest R with the interchange inequality holding for every r > R.
  int64_t interchange = 0;
  bool cap_exceeded = false;
  int64_t steps = 0;
};

// Searches r = 1, 2, ... for S(n0 + r, ceil((n0+r)/2) + k) >= S(n0,
// ceil(n0/2) + k) when p < 1/2 (<= when p > 1/2). The search stops once
// both parities satisfy the inequality inside the region where each parity
// subsequence is monotone in the required direction, so the returned R is
// exact rather than a heuristic cut-off. p = 1/2 is rejected.
absl::StatusOr<InterchangeResult> InterchangePoint(int64_t n0, int64_t k,
                                                   double p,
                                                   int64_t cap = 100'000);

// S(n, ceil(n/2)) for n in [n_min, n_max] and each p, as `x,series,value`
// rows.
std::string HalfPointSeriesCsv(int64_t n_min, int64_t n_max,
                               const std::vector<double>& p_values);

// Score distributions re-expressed as flip rates (n - q) / n, binned into
// `bins` equal-width bins on [0, 1], as `n,flip_rate_bin,probability` rows.
// Each series is followed by a `#` comment line with the concentration mass
// inside +/- window around the flip probability.
absl::StatusOr<std::string> DegradationCsv(const PrivacyParams& params,
                                           const std::vector<int64_t>& n_values,
                                           int bins, double window);

}  // namespace labeldp

#endif  // LABELDP_TRUNCBIN_H_
