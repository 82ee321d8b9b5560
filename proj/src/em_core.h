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

#ifndef LABELDP_EM_CORE_H_
#define LABELDP_EM_CORE_H_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "rng.h"

namespace labeldp {

// Privacy budget epsilon and global sensitivity of the quality score.
//
// epsilon = 0 (uniform output) and epsilon = +inf (identity release) are
// admitted as the two limits of the mechanism; callers that release data
// should reject them at their own boundary.
class PrivacyParams {
 public:
  static absl::StatusOr<PrivacyParams> Create(double epsilon,
                                              double sensitivity = 1.0);

  double epsilon() const { return epsilon_; }
  double sensitivity() const { return sensitivity_; }

  // epsilon / (2 * sensitivity), the log-weight of one unit of score.
  double ScoreExponent() const { return epsilon_ / (2.0 * sensitivity_); }

 private:
  PrivacyParams(double epsilon, double sensitivity)
      : epsilon_(epsilon), sensitivity_(sensitivity) {}

  double epsilon_;
  double sensitivity_;
};

// Non-empty vector of binary labels in {-1, +1}.
class LabelVector {
 public:
  static absl::StatusOr<LabelVector> Create(std::vector<int8_t> labels);
  static absl::StatusOr<LabelVector> FromInts(std::span<const int> labels);

  size_t size() const { return labels_.size(); }
  int8_t operator[](size_t i) const { return labels_[i]; }
  std::span<const int8_t> values() const { return labels_; }

  int64_t CountPositive() const;

  // Number of positions where the two vectors differ. Sizes must match.
  int64_t HammingDistance(const LabelVector& other) const;

  // Copy with the listed positions negated.
  LabelVector WithFlipped(std::span<const int64_t> positions) const;

  friend bool operator==(const LabelVector&, const LabelVector&) = default;
  friend auto operator<=>(const LabelVector&, const LabelVector&) = default;

 private:
  explicit LabelVector(std::vector<int8_t> labels)
      : labels_(std::move(labels)) {}

  std::vector<int8_t> labels_;
};

// Randomized-response flip probability, in [0, 1].
class RRParams {
 public:
  static absl::StatusOr<RRParams> Create(double flip_probability);
  double flip_probability() const { return flip_probability_; }

 private:
  friend RRParams FlipProbability(const PrivacyParams& params);

  explicit RRParams(double p) : flip_probability_(p) {}
  double flip_probability_;
};

// p = 1 / (1 + exp(epsilon / (2 * sensitivity))); never above 1/2.
RRParams FlipProbability(const PrivacyParams& params);

// Distribution of the Hamming score q in [0, n] under the exponential
// mechanism: log_probs[q] = log Pr(q).
struct ScoreDistribution {
  int64_t n = 0;
  std::vector<double> log_probs;

  double Probability(int64_t q) const;
};

// Which increment the forward recursion uses. Only kCorrected is a valid
// mechanism; the other two reproduce known misprints of the recursion and
// exist for fault-injection runs of the invariant suite.
enum class RecursionVariant {
  kCorrected,          // + epsilon / (2 * sensitivity)
  kUnscaledIncrement,  // + epsilon / 2, ignoring the sensitivity
  kDroppedIncrement,   // exponent term omitted
};

struct ScoreDistributionOptions {
  int64_t max_n = 10'000'000;
  RecursionVariant variant = RecursionVariant::kCorrected;
};

// Forward log recursion
//   log Pr(q = 0) = -n * log(1 + exp(c))
//   log Pr(q = i) = log(n - i + 1) - log(i) + c + log Pr(q = i - 1)
// with c = epsilon / (2 * sensitivity), accumulated in compensated extended
// precision so that the table normalizes to ~1e-12 even at n = 1e6.
absl::StatusOr<ScoreDistribution> ComputeScoreDistribution(
    int64_t n, const PrivacyParams& params,
    const ScoreDistributionOptions& options = {});

// Inverse-CDF sampler over a score distribution. Weights are max-shifted
// before exponentiation.
class ScoreSampler {
 public:
  explicit ScoreSampler(const ScoreDistribution& distribution);
  int64_t Sample(Rng& rng) const;
  int64_t n() const { return static_cast<int64_t>(cdf_.size()) - 1; }

 private:
  std::vector<double> cdf_;
};

int64_t SampleScore(const ScoreDistribution& distribution, Rng& rng);

// Uniformly random k-subset of {0, ..., n-1} by partial Fisher-Yates. The
// returned positions are in draw order.
std::vector<int64_t> UniformSubset(int64_t n, int64_t k, Rng& rng);

struct EmOutcome {
  int64_t score = 0;
  LabelVector output;
};

// Two-step exponential mechanism: draw q from the score distribution, then
// flip a uniformly random subset of n - q positions.
absl::StatusOr<EmOutcome> ApplyEm(const LabelVector& input,
                                  const PrivacyParams& params, Rng& rng);

// Same draw with a precomputed sampler; `sampler.n()` must equal the input
// size.
EmOutcome ApplyEm(const LabelVector& input, const ScoreSampler& sampler,
                  Rng& rng);

struct PrivatizationRecord {
  PrivacyParams params;
  uint64_t seed = 0;
  int64_t score = 0;
  int64_t flip_count = 0;
  LabelVector output;
};

// Seeded entry point; the record carries everything needed to audit the
// release.
absl::StatusOr<PrivatizationRecord> Privatize(const LabelVector& input,
                                              const PrivacyParams& params,
                                              uint64_t seed);

// Independent flips with probability rr.flip_probability().
LabelVector ApplyRr(const LabelVector& input, const RRParams& rr, Rng& rng);
LabelVector ApplyRr(const LabelVector& input, const RRParams& rr,
                    uint64_t seed);

struct OutputProbability {
  LabelVector output;
  double probability = 0.0;
};

inline constexpr int64_t kMaxExhaustiveOutputs = 20;
inline constexpr int64_t kMaxExhaustiveNeighbors = 10;

// Every one of the 2^n outputs with its probability
// exp(q * c) / (1 + exp(c))^n, q = n - HammingDistance(output, input).
// Outputs are ordered by the bitmask of flipped positions.
absl::StatusOr<std::vector<OutputProbability>> ExhaustiveOutputDistribution(
    const LabelVector& input, const PrivacyParams& params);

// Largest Pr[M(x) = y] / Pr[M(x') = y] over all inputs x, all neighbors x'
// (one label changed) and all outputs y. Requires finite epsilon, n <= 10.
absl::StatusOr<double> VerifyDp(int64_t n, const PrivacyParams& params);

// Max absolute difference, over all inputs and outputs of size n, between
// the two-step mechanism's per-output probability
// Pr(q) / C(n, q) (score from the recursion) and the randomized-response
// product p^d (1 - p)^(n - d). n <= 10.
absl::StatusOr<double> EmRrEquivalenceCheck(
    int64_t n, const PrivacyParams& params,
    RecursionVariant variant = RecursionVariant::kCorrected);

}  // namespace labeldp

#endif  // LABELDP_EM_CORE_H_
