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

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "nlohmann/json.hpp"
#include "numeric.h"

namespace labeldp {
namespace {

constexpr long double kTermCutoff = 80.0L;

struct LogPmf {
  int64_t n;
  long double log_p;
  long double log_q;

  LogPmf(int64_t n, double p)
      : n(n),
        log_p(std::log(static_cast<long double>(p))),
        log_q(std::log1p(-static_cast<long double>(p))) {}

  long double operator()(int64_t i) const {
    return LogBinomialCoefficient(n, i) + static_cast<long double>(i) * log_p +
           static_cast<long double>(n - i) * log_q;
  }
};

int64_t CeilHalf(int64_t n) { return (n + 1) / 2; }

}  // namespace

absl::StatusOr<TruncatedSumQuery> TruncatedSumQuery::Create(int64_t n,
                                                            int64_t lower,
                                                            int64_t upper,
                                                            double p) {
  if (n < 0 || lower < 0 || lower > upper || upper > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need 0 <= j <= k <= n, got n=", n, " j=", lower, " k=", upper));
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("p must lie in [0, 1], got ", p));
  }
  return TruncatedSumQuery{n, lower, upper, p};
}

double TruncBinom(const TruncatedSumQuery& query) {
  const auto [n, lower, upper, p] = query;
  if (lower > upper) return 0.0;
  if (p == 0.0) return lower == 0 ? 1.0 : 0.0;
  if (p == 1.0) return upper == n ? 1.0 : 0.0;

  const LogPmf log_pmf(n, p);
  const int64_t mode = std::clamp<int64_t>(
      static_cast<int64_t>(std::floor((static_cast<double>(n) + 1.0) * p)),
      lower, upper);
  const long double peak = log_pmf(mode);
  long double sum = 1.0L;
  for (int64_t i = mode - 1; i >= lower; --i) {
    const long double term = log_pmf(i) - peak;
    if (term < -kTermCutoff) break;
    sum += std::exp(term);
  }
  for (int64_t i = mode + 1; i <= upper; ++i) {
    const long double term = log_pmf(i) - peak;
    if (term < -kTermCutoff) break;
    sum += std::exp(term);
  }
  const double value = static_cast<double>(std::exp(peak + std::log(sum)));
  return std::clamp(value, 0.0, 1.0);
}

absl::StatusOr<double> UpperTrunc(int64_t n, int64_t j, double p) {
  absl::StatusOr<TruncatedSumQuery> query =
      TruncatedSumQuery::Create(n, 0, j, p);
  if (!query.ok()) return query.status();
  return TruncBinom(*query);
}

std::vector<double> CumulativeRow(int64_t n, double p) {
  std::vector<double> row(n + 1, 0.0);
  if (p == 0.0) {
    std::fill(row.begin(), row.end(), 1.0);
    return row;
  }
  if (p == 1.0) {
    row[n] = 1.0;
    return row;
  }
  const LogPmf log_pmf(n, p);
  long double running = 0.0L;
  for (int64_t i = 0; i <= n; ++i) {
    running += std::exp(log_pmf(i));
    row[i] = std::min(1.0, static_cast<double>(running));
  }
  row[n] = 1.0;
  return row;
}

double HalfPointTrunc(int64_t n, int64_t offset, double p) {
  const int64_t j = CeilHalf(n) + offset;
  if (j < 0) return 0.0;
  if (j >= n) return 1.0;
  return TruncBinom(TruncatedSumQuery{n, 0, j, p});
}

double SuccessProbability(int64_t n, const PrivacyParams& params) {
  const double p = FlipProbability(params).flip_probability();
  return TruncBinom(TruncatedSumQuery{n, 0, n / 2, p});
}

double HoeffdingLowerBound(int64_t n, double j, double p) {
  const double gap = j - static_cast<double>(n) * p;
  if (gap < 0.0) return 0.0;
  return -std::expm1(-2.0 * gap * gap / static_cast<double>(n));
}

absl::StatusOr<double> NormalApprox(const TruncatedSumQuery& query,
                                    const NormalApproxOptions& options) {
  const double n = static_cast<double>(query.n);
  const double variance = n * query.p * (1.0 - query.p);
  if (!(variance > 0.0)) {
    return absl::FailedPreconditionError(
        "normal approximation needs n p (1 - p) > 0");
  }
  const double mean = n * query.p;
  const double sd = std::sqrt(variance);
  const double shift = options.continuity_correction ? 0.5 : 0.0;
  const double lo = (static_cast<double>(query.lower) - shift - mean) / sd;
  const double hi = (static_cast<double>(query.upper) + shift - mean) / sd;
  // Difference of upper tails is more accurate when both ends sit above the
  // mean.
  if (lo > 0.0) return StandardNormalCdf(-lo) - StandardNormalCdf(-hi);
  return StandardNormalCdf(hi) - StandardNormalCdf(lo);
}

absl::StatusOr<double> ConcentrationCheck(int64_t n, double p, double window) {
  if (!(window > 0.0 && window <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("window must lie in (0, 1], got ", window));
  }
  if (n < 1 || !(p >= 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError("need n >= 1 and p in [0, 1]");
  }
  const double nd = static_cast<double>(n);
  const int64_t lower =
      std::max<int64_t>(0, static_cast<int64_t>(std::ceil(nd * (p - window))));
  const int64_t upper =
      std::min<int64_t>(n, static_cast<int64_t>(std::floor(nd * (p + window))));
  if (lower > upper) return 0.0;
  return TruncBinom(TruncatedSumQuery{n, lower, upper, p});
}

namespace {

// Rows S(n, .) for one p, computed on demand.
class RowCache {
 public:
  explicit RowCache(double p) : p_(p) {}

  double operator()(int64_t n, int64_t j) {
    if (j < 0) return 0.0;
    if (j >= n) return 1.0;
    auto it = rows_.find(n);
    if (it == rows_.end()) it = rows_.emplace(n, CumulativeRow(n, p_)).first;
    return it->second[j];
  }

 private:
  double p_;
  std::map<int64_t, std::vector<double>> rows_;
};

std::string DescribeGrid(int property_id, const ScanGrid& grid) {
  return absl::StrFormat("property=%d n=[%d,%d] p={%s} offsets={%s}",
                         property_id, grid.n_min, grid.n_max,
                         absl::StrJoin(grid.p_grid, ",",
                                       [](std::string* out, double p) {
                                         absl::StrAppendFormat(out, "%g", p);
                                       }),
                         absl::StrJoin(grid.offsets, ","));
}

}  // namespace

absl::StatusOr<MonotonicityReport> ScanMonotonicity(int property_id,
                                                    const ScanGrid& grid) {
  if (property_id < 1 || property_id > 4) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown property id ", property_id));
  }
  if (grid.p_grid.empty() || grid.n_min < 1 || grid.n_max <= grid.n_min) {
    return absl::InvalidArgumentError(
        "scan needs a non-empty p grid and 1 <= n_min < n_max");
  }
  for (double p : grid.p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("grid probability out of range: ", p));
    }
  }
  if (property_id != 4 && grid.offsets.empty()) {
    return absl::InvalidArgumentError("scan needs at least one offset");
  }

  MonotonicityReport report;
  report.property_id = property_id;
  report.grid = DescribeGrid(property_id, grid);
  const double tol = kScanTolerance;

  auto record = [](std::vector<ScanFinding>& sink, int64_t n, int64_t next_n,
                   double p, int64_t offset, double before, double after,
                   std::string note) {
    sink.push_back(
        ScanFinding{n, next_n, p, offset, before, after, std::move(note)});
  };

  if (property_id == 4) {
    std::vector<double> ps = grid.p_grid;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (int64_t n = grid.n_min; n <= grid.n_max; ++n) {
      std::vector<std::vector<double>> rows;
      rows.reserve(ps.size());
      for (double p : ps) rows.push_back(CumulativeRow(n, p));
      for (size_t a = 0; a + 1 < ps.size(); ++a) {
        for (int64_t j = 0; j <= n; ++j) {
          ++report.comparisons;
          if (rows[a + 1][j] > rows[a][j] + tol) {
            record(report.violations, n, n, ps[a + 1], j, rows[a][j],
                   rows[a + 1][j],
                   absl::StrFormat("p %g -> %g", ps[a], ps[a + 1]));
          }
        }
      }
      if (ps.front() == 0.0) {
        for (int64_t j = 0; j <= n; ++j) {
          ++report.comparisons;
          if (rows.front()[j] != 1.0) {
            record(report.violations, n, n, 0.0, j, 1.0, rows.front()[j],
                   "p = 0 endpoint");
          }
        }
      }
      if (ps.back() == 1.0) {
        for (int64_t j = 0; j < n; ++j) {
          ++report.comparisons;
          if (rows.back()[j] != 0.0) {
            record(report.violations, n, n, 1.0, j, 0.0, rows.back()[j],
                   "p = 1 endpoint");
          }
        }
      }
    }
    return report;
  }

  for (double p : grid.p_grid) {
    RowCache s(p);
    for (int64_t offset : grid.offsets) {
      switch (property_id) {
        case 1: {
          const int64_t j = offset;
          if (j < 0) break;
          for (int64_t n = std::max(grid.n_min, j); n < grid.n_max; ++n) {
            ++report.comparisons;
            const double before = s(n, j);
            const double after = s(n + 1, j);
            if (after > before + tol) {
              record(report.violations, n, n + 1, p, j, before, after,
                     "S(n+1,j) > S(n,j)");
            }
          }
          break;
        }
        case 2: {
          const int64_t k = offset;
          if (k < 0) break;
          for (int64_t n = std::max(grid.n_min, k); n < grid.n_max; ++n) {
            ++report.comparisons;
            const double before = s(n, n - k);
            const double after = s(n + 1, n + 1 - k);
            if (after < before - tol) {
              record(report.violations, n, n + 1, p, k, before, after,
                     "S(n+1,n+1-k) < S(n,n-k)");
            }
          }
          break;
        }
        case 3: {
          const int64_t k = offset;
          for (int64_t n = grid.n_min; n + 2 <= grid.n_max; ++n) {
            const int64_t j = CeilHalf(n) + k;
            if (j < 0 || j > n) continue;
            const double threshold =
                static_cast<double>(n - j) / static_cast<double>(n + 1);
            const bool increasing = p <= threshold;
            const double before = s(n, j);
            const double after = s(n + 2, CeilHalf(n + 2) + k);
            ++report.comparisons;
            const bool ok =
                increasing ? after >= before - tol : after <= before + tol;
            if (!ok) {
              record(report.violations, n, n + 2, p, k, before, after,
                     increasing ? "expected same-parity increase"
                                : "expected same-parity decrease");
            }
            const double cross = s(n + 1, CeilHalf(n + 1) + k);
            const bool against =
                increasing ? cross < before - tol : cross > before + tol;
            if (against) {
              record(report.exceptions, n, n + 1, p, k, before, cross,
                     n % 2 == 0 ? "cross-parity step from even n"
                                : "cross-parity step from odd n");
            }
          }
          break;
        }
      }
    }
  }
  report.parity_split = !report.exceptions.empty();
  return report;
}

std::string MonotonicityReportJson(const MonotonicityReport& report) {
  auto findings = [](const std::vector<ScanFinding>& list) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const ScanFinding& f : list) {
      out.push_back({{"n", f.n},
                     {"next_n", f.next_n},
                     {"p", f.p},
                     {"offset", f.offset},
                     {"before", f.before},
                     {"after", f.after},
                     {"note", f.note}});
    }
    return out;
  };
  nlohmann::ordered_json json;
  json["property"] = report.property_id;
  json["grid"] = report.grid;
  json["comparisons"] = report.comparisons;
  json["held"] = report.Held();
  json["violation_count"] = report.violations.size();
  json["violations"] = findings(report.violations);
  json["parity_split"] = report.parity_split;
  json["exception_count"] = report.exceptions.size();
  json["exceptions"] = findings(report.exceptions);
  return json.dump(2) + "\n";
}

absl::StatusOr<InterchangeResult> InterchangePoint(int64_t n0, int64_t k,
                                                   double p, int64_t cap) {
  if (n0 < 1) return absl::InvalidArgumentError("n0 must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError("p must lie in [0, 1]");
  }
  if (p == 0.5) {
    return absl::InvalidArgumentError(
        "no interchange point is guaranteed at p = 1/2");
  }
  const bool increasing = p < 0.5;
  const double base = HalfPointTrunc(n0, k, p);
  auto satisfied = [&](double value) {
    return increasing ? value >= base : value <= base;
  };
  // Property 3 regime test for the step m -> m + 2.
  auto monotone_from = [&](int64_t m) {
    const int64_t j = CeilHalf(m) + k;
    const double threshold =
        static_cast<double>(m - j) / static_cast<double>(m + 1);
    return increasing ? p <= threshold : p >= threshold;
  };

  InterchangeResult result;
  bool previous_ok = false;
  for (int64_t r = 1; r <= cap; ++r) {
    const int64_t m = n0 + r;
    const bool ok = satisfied(HalfPointTrunc(m, k, p));
    result.steps = r;
    if (!ok) result.interchange = r;
    if (ok && previous_ok && monotone_from(m - 1) && monotone_from(m)) {
      return result;
    }
    previous_ok = ok;
  }
  result.cap_exceeded = true;
  return result;
}

std::string HalfPointSeriesCsv(int64_t n_min, int64_t n_max,
                               const std::vector<double>& p_values) {
  std::string out = "x,series,value\n";
  for (double p : p_values) {
    for (int64_t n = n_min; n <= n_max; ++n) {
      absl::StrAppendFormat(&out, "%d,p=%g,%.12f\n", n, p,
                            HalfPointTrunc(n, 0, p));
    }
  }
  return out;
}

absl::StatusOr<std::string> DegradationCsv(const PrivacyParams& params,
                                           const std::vector<int64_t>& n_values,
                                           int bins, double window) {
  if (n_values.empty()) return absl::InvalidArgumentError("empty n list");
  if (bins < 1) return absl::InvalidArgumentError("bins must be positive");
  const double p = FlipProbability(params).flip_probability();
  std::string out = "n,flip_rate_bin,probability\n";
  std::string summary;
  for (int64_t n : n_values) {
    absl::StatusOr<ScoreDistribution> dist =
        ComputeScoreDistribution(n, params);
    if (!dist.ok()) return dist.status();
    std::vector<CompensatedSum> mass(bins);
    for (int64_t q = 0; q <= n; ++q) {
      const int64_t flips = n - q;
      const int64_t bin = std::min<int64_t>(flips * bins / n, bins - 1);
      mass[bin].Add(dist->Probability(q));
    }
    for (int b = 0; b < bins; ++b) {
      absl::StrAppendFormat(&out, "%d,%.6f,%.12e\n", n,
                            (b + 0.5) / static_cast<double>(bins),
                            mass[b].Total());
    }
    absl::StatusOr<double> concentrated = ConcentrationCheck(n, p, window);
    if (!concentrated.ok()) return concentrated.status();
    absl::StrAppendFormat(
        &summary, "# concentration n=%d p=%.6f window=%.3f mass=%.12f\n", n, p,
        window, *concentrated);
  }
  return out + summary;
}

}  // namespace labeldp
