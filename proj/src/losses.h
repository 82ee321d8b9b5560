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

#ifndef LABELDP_LOSSES_H_
#define LABELDP_LOSSES_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace labeldp {

enum class LossKind {
  kBarrier,
  kSigmoid,
  kUnhinged,
  kSavage,
  kLogistic,
  kSquared,
  kHinge,
  kZeroOne,
};

// A surrogate loss on the margin z. Only the barrier hinge carries
// parameters: slope b > 1 and half-width r > 0 of its symmetric window.
class LossSpec {
 public:
  static constexpr double kDefaultBarrierSlope = 2.0;
  static constexpr double kDefaultBarrierWidth = 1.0;

  static absl::StatusOr<LossSpec> Create(LossKind kind,
                                         double b = kDefaultBarrierSlope,
                                         double r = kDefaultBarrierWidth);

  // Accepts "barrier", "barrier:b=200,r=50", "sigmoid", "unhinged",
  // "savage", "logistic", "squared", "hinge" and "zero_one".
  static absl::StatusOr<LossSpec> Parse(std::string_view text);

  LossKind kind() const { return kind_; }
  double b() const { return b_; }
  double r() const { return r_; }
  bool trainable() const { return kind_ != LossKind::kZeroOne; }

  // Inverse of Parse. Barrier parameters are always spelled out.
  std::string ToString() const;

  friend bool operator==(const LossSpec&, const LossSpec&) = default;

 private:
  LossSpec(LossKind kind, double b, double r) : kind_(kind), b_(b), r_(r) {}

  LossKind kind_;
  double b_;
  double r_;
};

// Barrier plus the six baselines, in table order.
std::vector<LossSpec> TrainableLosses();

double LossValue(const LossSpec& spec, double z);

// dl/dz. At a kink the two one-sided derivatives are averaged. The 0-1 loss
// fails with FailedPrecondition.
absl::StatusOr<double> LossGrad(const LossSpec& spec, double z);

// Points where LossGrad is the averaged subgradient.
std::vector<double> LossKinks(const LossSpec& spec);

struct SymmetryReport {
  // C = 2 l(0), the only constant l(x) + l(-x) can take.
  double constant = 0.0;
  double max_defect = 0.0;
};

// max |l(x) + l(-x) - C| over `samples` evenly spaced x in [-window, window].
absl::StatusOr<SymmetryReport> SymmetryDefect(const LossSpec& spec,
                                              double window, int samples);

// Mean of l(p - q) over every (p, q) in scores_p x scores_n.
absl::StatusOr<double> AucRisk(std::span<const double> scores_p,
                               std::span<const double> scores_n,
                               const LossSpec& spec);

// 1/2 (mean over positives of l(f) + mean over negatives of l(-f)).
absl::StatusOr<double> BerRisk(std::span<const double> scores,
                               std::span<const int8_t> labels,
                               const LossSpec& spec);

}  // namespace labeldp

#endif  // LABELDP_LOSSES_H_
