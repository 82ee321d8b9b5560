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

#ifndef LABELDP_NUMERIC_H_
#define LABELDP_NUMERIC_H_

#include <cstdint>
#include <span>

namespace labeldp {

// Neumaier's compensated summation.
class CompensatedSum {
 public:
  void Add(double value);
  double Total() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// log(1 + exp(x)) without overflow.
double Softplus(double x);
long double SoftplusLong(long double x);

// log(sum(exp(values))). Max-shifted and compensated. Returns -inf for an
// empty span or when every entry is -inf.
double LogSumExp(std::span<const double> values);

// log C(n, k) in extended precision.
long double LogBinomialCoefficient(int64_t n, int64_t k);

// Standard normal CDF via erfc.
double StandardNormalCdf(double x);

}  // namespace labeldp

#endif  // LABELDP_NUMERIC_H_
