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

#include "numeric.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace labeldp {

void CompensatedSum::Add(double value) {
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value)) {
    compensation_ += (sum_ - t) + value;
  } else {
    compensation_ += (value - t) + sum_;
  }
  sum_ = t;
}

double Softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

long double SoftplusLong(long double x) {
  return std::max(x, 0.0L) + std::log1p(std::exp(-std::abs(x)));
}

double LogSumExp(std::span<const double> values) {
  double max_value = -std::numeric_limits<double>::infinity();
  for (double v : values) max_value = std::max(max_value, v);
  if (!std::isfinite(max_value)) return max_value;
  CompensatedSum sum;
  for (double v : values) sum.Add(std::exp(v - max_value));
  return max_value + std::log(sum.Total());
}

long double LogBinomialCoefficient(int64_t n, int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<long double>::infinity();
  if (k == 0 || k == n) return 0.0L;
  // lgammal_r avoids the global `signgam` write of std::lgamma.
  int sign = 0;
  return lgammal_r(static_cast<long double>(n) + 1.0L, &sign) -
         lgammal_r(static_cast<long double>(k) + 1.0L, &sign) -
         lgammal_r(static_cast<long double>(n - k) + 1.0L, &sign);
}

double StandardNormalCdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace labeldp
