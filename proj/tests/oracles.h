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

// Extended-precision reference values shared by the test suites. Everything
// here is computed from first principles in 50-digit arithmetic and does not
// call into the library.

#ifndef LABELDP_TESTS_ORACLES_H_
#define LABELDP_TESTS_ORACLES_H_

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstdint>
#include <vector>

namespace labeldp::oracle {

using Float = boost::multiprecision::cpp_bin_float_50;

// p = 1 / (1 + exp(epsilon / (2 delta))).
inline Float FlipProbability(double epsilon, double delta) {
  return Float(1) / (Float(1) + exp(Float(epsilon) / (Float(2) * delta)));
}

// Binomial(n, p) probability mass for k = 0..n by the term ratio
// P(k + 1) / P(k) = (n - k) / (k + 1) * p / (1 - p).
inline std::vector<Float> BinomialPmf(int64_t n, const Float& p) {
  std::vector<Float> pmf(n + 1);
  if (p == 0) {
    pmf[0] = 1;
    return pmf;
  }
  if (p == 1) {
    pmf[n] = 1;
    return pmf;
  }
  const Float odds = p / (Float(1) - p);
  pmf[0] = pow(Float(1) - p, n);
  for (int64_t k = 0; k < n; ++k) {
    pmf[k + 1] = pmf[k] * Float(n - k) / Float(k + 1) * odds;
  }
  return pmf;
}

// Pr[lower <= Binomial(n, p) <= upper], with the bounds clamped to [0, n].
inline Float TruncBinom(int64_t n, int64_t lower, int64_t upper,
                        const Float& p) {
  const std::vector<Float> pmf = BinomialPmf(n, p);
  Float total = 0;
  for (int64_t k = lower < 0 ? 0 : lower; k <= upper && k <= n; ++k) {
    total += pmf[k];
  }
  return total;
}

// Exact law of the Hamming score q: Pr(q) = C(n, q) e^{qc} / (1 + e^c)^n,
// c = epsilon / (2 delta). Equivalently q ~ Binomial(n, 1 - p).
inline std::vector<Float> ScoreDistribution(int64_t n, double epsilon,
                                            double delta) {
  return BinomialPmf(n, Float(1) - FlipProbability(epsilon, delta));
}

// Plain Hoeffding bound 1 - exp(-2 (n p - j)^2 / n) on Pr[Binomial <= j],
// or 0 when j <= n p.
inline Float HoeffdingLowerBound(int64_t n, double j, double p) {
  const Float gap = Float(j) - Float(n) * p;
  if (gap <= 0) return 0;
  return Float(1) - exp(Float(-2) * gap * gap / Float(n));
}

}  // namespace labeldp::oracle

#endif  // LABELDP_TESTS_ORACLES_H_
