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

#include "em_core.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "numeric.h"

namespace labeldp {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log Pr[output] for an output at Hamming distance `distance` from the
// input, straight from the mechanism's definition.
double LogOutputProbability(int64_t n, int64_t distance, double exponent) {
  if (std::isinf(exponent)) return distance == 0 ? 0.0 : kNegInf;
  return static_cast<double>(n - distance) * exponent -
         static_cast<double>(n) * Softplus(exponent);
}

absl::Status CheckEnumerationSize(int64_t n, int64_t limit) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  if (n > limit) {
    return absl::OutOfRangeError(absl::StrCat(
        "exhaustive enumeration limited to n <= ", limit, ", got ", n));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<PrivacyParams> PrivacyParams::Create(double epsilon,
                                                    double sensitivity) {
  if (std::isnan(epsilon) || epsilon < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be non-negative, got ", epsilon));
  }
  if (!std::isfinite(sensitivity) || sensitivity <= 0.0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sensitivity must be finite and positive, got ", sensitivity));
  }
  return PrivacyParams(epsilon, sensitivity);
}

absl::StatusOr<LabelVector> LabelVector::Create(std::vector<int8_t> labels) {
  if (labels.empty()) {
    return absl::InvalidArgumentError("label vector must not be empty");
  }
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1 && labels[i] != -1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "label at position ", i, " is ", labels[i], ", expected -1 or 1"));
    }
  }
  return LabelVector(std::move(labels));
}

absl::StatusOr<LabelVector> LabelVector::FromInts(std::span<const int> labels) {
  std::vector<int8_t> values;
  values.reserve(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1 && labels[i] != -1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "label at position ", i, " is ", labels[i], ", expected -1 or 1"));
    }
    values.push_back(static_cast<int8_t>(labels[i]));
  }
  return Create(std::move(values));
}

int64_t LabelVector::CountPositive() const {
  return std::count(labels_.begin(), labels_.end(), int8_t{1});
}

int64_t LabelVector::HammingDistance(const LabelVector& other) const {
  int64_t distance = 0;
  for (size_t i = 0; i < labels_.size(); ++i) {
    distance += labels_[i] != other.labels_[i];
  }
  return distance;
}

LabelVector LabelVector::WithFlipped(std::span<const int64_t> positions) const {
  std::vector<int8_t> flipped = labels_;
  for (int64_t pos : positions)
    flipped[pos] = static_cast<int8_t>(-flipped[pos]);
  return LabelVector(std::move(flipped));
}

absl::StatusOr<RRParams> RRParams::Create(double flip_probability) {
  if (!(flip_probability >= 0.0 && flip_probability <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "flip probability must lie in [0, 1], got ", flip_probability));
  }
  return RRParams(flip_probability);
}

RRParams FlipProbability(const PrivacyParams& params) {
  // 1 / (1 + e^c) = e^{-softplus(c)}, stable for large c.
  return RRParams(std::exp(-Softplus(params.ScoreExponent())));
}

double ScoreDistribution::Probability(int64_t q) const {
  return std::exp(log_probs[q]);
}

absl::StatusOr<ScoreDistribution> ComputeScoreDistribution(
    int64_t n, const PrivacyParams& params,
    const ScoreDistributionOptions& options) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  if (n > options.max_n) {
    return absl::OutOfRangeError(absl::StrCat(
        "n = ", n, " exceeds the configured maximum ", options.max_n));
  }
  ScoreDistribution dist;
  dist.n = n;
  dist.log_probs.assign(n + 1, kNegInf);

  const long double exponent =
      static_cast<long double>(params.epsilon()) /
      (2.0L * static_cast<long double>(params.sensitivity()));
  if (std::isinf(exponent)) {
    dist.log_probs[n] = 0.0;
    return dist;
  }
  long double increment_exponent = exponent;
  switch (options.variant) {
    case RecursionVariant::kCorrected:
      break;
    case RecursionVariant::kUnscaledIncrement:
      increment_exponent = static_cast<long double>(params.epsilon()) / 2.0L;
      break;
    case RecursionVariant::kDroppedIncrement:
      increment_exponent = 0.0L;
      break;
  }

  // Kahan-compensated running sum in extended precision.
  long double value = -static_cast<long double>(n) * SoftplusLong(exponent);
  long double compensation = 0.0L;
  dist.log_probs[0] = static_cast<double>(value);
  for (int64_t i = 1; i <= n; ++i) {
    const long double step = std::log(static_cast<long double>(n - i + 1)) -
                             std::log(static_cast<long double>(i)) +
                             increment_exponent;
    const long double y = step - compensation;
    const long double t = value + y;
    compensation = (t - value) - y;
    value = t;
    dist.log_probs[i] = static_cast<double>(value);
  }
  return dist;
}

ScoreSampler::ScoreSampler(const ScoreDistribution& distribution) {
  const double max_log = *std::max_element(distribution.log_probs.begin(),
                                           distribution.log_probs.end());
  cdf_.reserve(distribution.log_probs.size());
  double running = 0.0;
  for (double lp : distribution.log_probs) {
    running += std::exp(lp - max_log);
    cdf_.push_back(running);
  }
}

int64_t ScoreSampler::Sample(Rng& rng) const {
  const double u = rng.UniformDouble() * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return std::min<int64_t>(it - cdf_.begin(), n());
}

int64_t SampleScore(const ScoreDistribution& distribution, Rng& rng) {
  return ScoreSampler(distribution).Sample(rng);
}

std::vector<int64_t> UniformSubset(int64_t n, int64_t k, Rng& rng) {
  std::vector<int64_t> indices(n);
  std::iota(indices.begin(), indices.end(), int64_t{0});
  for (int64_t i = 0; i < k; ++i) {
    const int64_t j =
        i + static_cast<int64_t>(rng.UniformInt(static_cast<uint64_t>(n - i)));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  return indices;
}

EmOutcome ApplyEm(const LabelVector& input, const ScoreSampler& sampler,
                  Rng& rng) {
  const int64_t n = static_cast<int64_t>(input.size());
  const int64_t score = sampler.Sample(rng);
  const std::vector<int64_t> flips = UniformSubset(n, n - score, rng);
  return EmOutcome{score, input.WithFlipped(flips)};
}

absl::StatusOr<EmOutcome> ApplyEm(const LabelVector& input,
                                  const PrivacyParams& params, Rng& rng) {
  absl::StatusOr<ScoreDistribution> dist =
      ComputeScoreDistribution(static_cast<int64_t>(input.size()), params);
  if (!dist.ok()) return dist.status();
  return ApplyEm(input, ScoreSampler(*dist), rng);
}

absl::StatusOr<PrivatizationRecord> Privatize(const LabelVector& input,
                                              const PrivacyParams& params,
                                              uint64_t seed) {
  Rng rng = Rng::ForStream(seed, StreamTag::kPrivatize, 0);
  absl::StatusOr<EmOutcome> outcome = ApplyEm(input, params, rng);
  if (!outcome.ok()) return outcome.status();
  const int64_t n = static_cast<int64_t>(input.size());
  return PrivatizationRecord{params, seed, outcome->score, n - outcome->score,
                             std::move(outcome->output)};
}

LabelVector ApplyRr(const LabelVector& input, const RRParams& rr, Rng& rng) {
  std::vector<int64_t> flips;
  const double p = rr.flip_probability();
  for (size_t i = 0; i < input.size(); ++i) {
    // Always draw, so the stream position does not depend on p.
    if (rng.UniformDouble() < p) flips.push_back(static_cast<int64_t>(i));
  }
  return input.WithFlipped(flips);
}

LabelVector ApplyRr(const LabelVector& input, const RRParams& rr,
                    uint64_t seed) {
  Rng rng = Rng::ForStream(seed, StreamTag::kRandomizedResponse, 0);
  return ApplyRr(input, rr, rng);
}

absl::StatusOr<std::vector<OutputProbability>> ExhaustiveOutputDistribution(
    const LabelVector& input, const PrivacyParams& params) {
  const int64_t n = static_cast<int64_t>(input.size());
  if (absl::Status s = CheckEnumerationSize(n, kMaxExhaustiveOutputs);
      !s.ok()) {
    return s;
  }
  const double exponent = params.ScoreExponent();
  std::vector<OutputProbability> outputs;
  outputs.reserve(uint64_t{1} << n);
  std::vector<int64_t> positions;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    positions.clear();
    for (int64_t i = 0; i < n; ++i) {
      if (mask >> i & 1) positions.push_back(i);
    }
    LabelVector output = input.WithFlipped(positions);
    const int64_t distance = output.HammingDistance(input);
    outputs.push_back(OutputProbability{
        std::move(output),
        std::exp(LogOutputProbability(n, distance, exponent))});
  }
  return outputs;
}

absl::StatusOr<double> VerifyDp(int64_t n, const PrivacyParams& params) {
  if (absl::Status s = CheckEnumerationSize(n, kMaxExhaustiveNeighbors);
      !s.ok()) {
    return s;
  }
  if (!std::isfinite(params.epsilon())) {
    return absl::InvalidArgumentError("VerifyDp requires a finite epsilon");
  }
  const uint64_t size = uint64_t{1} << n;
  // probability[x][y] for input bitmask x and output bitmask y, through the
  // label-vector definition rather than the closed form.
  std::vector<std::vector<double>> probability(size);
  for (uint64_t x = 0; x < size; ++x) {
    std::vector<int8_t> labels(n);
    for (int64_t i = 0; i < n; ++i) labels[i] = (x >> i & 1) ? 1 : -1;
    absl::StatusOr<LabelVector> input = LabelVector::Create(std::move(labels));
    if (!input.ok()) return input.status();
    absl::StatusOr<std::vector<OutputProbability>> dist =
        ExhaustiveOutputDistribution(*input, params);
    if (!dist.ok()) return dist.status();
    // Re-index by the output's own bitmask.
    probability[x].assign(size, 0.0);
    for (const OutputProbability& entry : *dist) {
      uint64_t y = 0;
      for (int64_t i = 0; i < n; ++i) {
        if (entry.output[i] == 1) y |= uint64_t{1} << i;
      }
      probability[x][y] = entry.probability;
    }
  }
  double max_ratio = 0.0;
  for (uint64_t x = 0; x < size; ++x) {
    for (int64_t i = 0; i < n; ++i) {
      const uint64_t neighbor = x ^ (uint64_t{1} << i);
      for (uint64_t y = 0; y < size; ++y) {
        max_ratio =
            std::max(max_ratio, probability[x][y] / probability[neighbor][y]);
      }
    }
  }
  return max_ratio;
}

absl::StatusOr<double> EmRrEquivalenceCheck(int64_t n,
                                            const PrivacyParams& params,
                                            RecursionVariant variant) {
  if (absl::Status s = CheckEnumerationSize(n, kMaxExhaustiveNeighbors);
      !s.ok()) {
    return s;
  }
  ScoreDistributionOptions options;
  options.variant = variant;
  absl::StatusOr<ScoreDistribution> dist =
      ComputeScoreDistribution(n, params, options);
  if (!dist.ok()) return dist.status();
  const double p = FlipProbability(params).flip_probability();

  const uint64_t size = uint64_t{1} << n;
  double max_diff = 0.0;
  for (uint64_t x = 0; x < size; ++x) {
    for (uint64_t y = 0; y < size; ++y) {
      const int64_t distance = std::popcount(x ^ y);
      const int64_t score = n - distance;
      // Uniform choice within the score group of size C(n, distance).
      const double two_step =
          std::exp(dist->log_probs[score] -
                   static_cast<double>(LogBinomialCoefficient(n, distance)));
      const double randomized_response =
          std::pow(p, static_cast<double>(distance)) *
          std::pow(1.0 - p, static_cast<double>(score));
      max_diff = std::max(max_diff, std::abs(two_step - randomized_response));
    }
  }
  return max_diff;
}

}  // namespace labeldp
