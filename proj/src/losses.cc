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

#include "losses.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "numeric.h"

namespace labeldp {
namespace {

constexpr std::pair<LossKind, const char*> kNames[] = {
    {LossKind::kBarrier, "barrier"},   {LossKind::kSigmoid, "sigmoid"},
    {LossKind::kUnhinged, "unhinged"}, {LossKind::kSavage, "savage"},
    {LossKind::kLogistic, "logistic"}, {LossKind::kSquared, "squared"},
    {LossKind::kHinge, "hinge"},       {LossKind::kZeroOne, "zero_one"},
};

const char* KindName(LossKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

// 1 / (1 + e^-z) without overflow.
double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double BarrierValue(double b, double r, double z) {
  return std::max(-b * (r + z) + r, std::max(b * (z - r), r - z));
}

double BarrierGrad(double b, double r, double z) {
  const double left = -b * r / (b - 1.0);
  if (z < left) return -b;
  if (z == left) return -(b + 1.0) / 2.0;
  if (z < r) return -1.0;
  if (z == r) return (b - 1.0) / 2.0;
  return b;
}

}  // namespace

absl::StatusOr<LossSpec> LossSpec::Create(LossKind kind, double b, double r) {
  if (kind == LossKind::kBarrier) {
    if (!(b > 1.0) || !std::isfinite(b)) {
      return absl::InvalidArgumentError(
          absl::StrCat("barrier slope b must be a finite value > 1, got ", b));
    }
    if (!(r > 0.0) || !std::isfinite(r)) {
      return absl::InvalidArgumentError(
          absl::StrCat("barrier width r must be a finite value > 0, got ", r));
    }
    return LossSpec(kind, b, r);
  }
  return LossSpec(kind, 0.0, 0.0);
}

absl::StatusOr<LossSpec> LossSpec::Parse(std::string_view text) {
  const absl::string_view input(text.data(), text.size());
  const std::pair<absl::string_view, absl::string_view> head =
      absl::StrSplit(input, absl::MaxSplits(':', 1));
  LossKind kind;
  bool known = false;
  for (const auto& [k, name] : kNames) {
    if (head.first == name) {
      kind = k;
      known = true;
    }
  }
  if (!known) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown loss '", head.first, "'"));
  }
  const bool has_params = input.size() > head.first.size();
  if (kind != LossKind::kBarrier) {
    if (has_params) {
      return absl::InvalidArgumentError(
          absl::StrCat("loss '", head.first, "' takes no parameters"));
    }
    return Create(kind);
  }
  double b = kDefaultBarrierSlope;
  double r = kDefaultBarrierWidth;
  if (has_params) {
    for (absl::string_view item : absl::StrSplit(head.second, ',')) {
      const std::pair<absl::string_view, absl::string_view> kv =
          absl::StrSplit(item, absl::MaxSplits('=', 1));
      double value = 0.0;
      if (!absl::SimpleAtod(kv.second, &value)) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad barrier parameter '", item, "'"));
      }
      if (kv.first == "b") {
        b = value;
      } else if (kv.first == "r") {
        r = value;
      } else {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown barrier parameter '", kv.first, "'"));
      }
    }
  }
  return Create(kind, b, r);
}

std::string LossSpec::ToString() const {
  if (kind_ != LossKind::kBarrier) return KindName(kind_);
  return absl::StrFormat("%s:b=%g,r=%g", KindName(kind_), b_, r_);
}

std::vector<LossSpec> TrainableLosses() {
  std::vector<LossSpec> losses;
  for (LossKind kind :
       {LossKind::kBarrier, LossKind::kSigmoid, LossKind::kUnhinged,
        LossKind::kSavage, LossKind::kLogistic, LossKind::kSquared,
        LossKind::kHinge}) {
    losses.push_back(*LossSpec::Create(kind));
  }
  return losses;
}

double LossValue(const LossSpec& spec, double z) {
  switch (spec.kind()) {
    case LossKind::kBarrier:
      return BarrierValue(spec.b(), spec.r(), z);
    case LossKind::kSigmoid:
      return Sigmoid(-z);
    case LossKind::kUnhinged:
      return 1.0 - z;
    case LossKind::kSavage: {
      const double s = Sigmoid(-z);
      return s * s;
    }
    case LossKind::kLogistic:
      return std::max(0.0, -z) + std::log1p(std::exp(-std::abs(z)));
    case LossKind::kSquared:
      return (1.0 - z) * (1.0 - z);
    case LossKind::kHinge:
      return std::max(0.0, 1.0 - z);
    case LossKind::kZeroOne:
      return z <= 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

absl::StatusOr<double> LossGrad(const LossSpec& spec, double z) {
  switch (spec.kind()) {
    case LossKind::kBarrier:
      return BarrierGrad(spec.b(), spec.r(), z);
    case LossKind::kSigmoid:
      return -Sigmoid(z) * Sigmoid(-z);
    case LossKind::kUnhinged:
      return -1.0;
    case LossKind::kSavage: {
      const double s = Sigmoid(-z);
      return -2.0 * s * s * Sigmoid(z);
    }
    case LossKind::kLogistic:
      return -Sigmoid(-z);
    case LossKind::kSquared:
      return -2.0 * (1.0 - z);
    case LossKind::kHinge:
      if (z < 1.0) return -1.0;
      if (z == 1.0) return -0.5;
      return 0.0;
    case LossKind::kZeroOne:
      break;
  }
  return absl::FailedPreconditionError(
      absl::StrCat("non-trainable loss: ", spec.ToString()));
}

std::vector<double> LossKinks(const LossSpec& spec) {
  switch (spec.kind()) {
    case LossKind::kBarrier:
      return {-spec.b() * spec.r() / (spec.b() - 1.0), spec.r()};
    case LossKind::kHinge:
      return {1.0};
    case LossKind::kZeroOne:
      return {0.0};
    default:
      return {};
  }
}

absl::StatusOr<SymmetryReport> SymmetryDefect(const LossSpec& spec,
                                              double window, int samples) {
  if (!(window >= 0.0) || !std::isfinite(window) || samples < 2) {
    return absl::InvalidArgumentError(
        "need a finite window >= 0 and at least 2 samples");
  }
  SymmetryReport report;
  report.constant = 2.0 * LossValue(spec, 0.0);
  for (int i = 0; i < samples; ++i) {
    const double x = -window + 2.0 * window * i / (samples - 1);
    const double defect =
        std::abs(LossValue(spec, x) + LossValue(spec, -x) - report.constant);
    report.max_defect = std::max(report.max_defect, defect);
  }
  return report;
}

absl::StatusOr<double> AucRisk(std::span<const double> scores_p,
                               std::span<const double> scores_n,
                               const LossSpec& spec) {
  if (scores_p.empty() || scores_n.empty()) {
    return absl::FailedPreconditionError(
        "degenerate class: AUC risk needs positive and negative scores");
  }
  CompensatedSum total;
  for (double p : scores_p) {
    for (double q : scores_n) total.Add(LossValue(spec, p - q));
  }
  return total.Total() /
         (static_cast<double>(scores_p.size()) * scores_n.size());
}

absl::StatusOr<double> BerRisk(std::span<const double> scores,
                               std::span<const int8_t> labels,
                               const LossSpec& spec) {
  if (scores.size() != labels.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "%d scores for %d labels", scores.size(), labels.size()));
  }
  CompensatedSum positive;
  CompensatedSum negative;
  int64_t n_positive = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] > 0) {
      positive.Add(LossValue(spec, scores[i]));
      ++n_positive;
    } else {
      negative.Add(LossValue(spec, -scores[i]));
    }
  }
  const int64_t n_negative = static_cast<int64_t>(scores.size()) - n_positive;
  if (n_positive == 0 || n_negative == 0) {
    return absl::FailedPreconditionError(
        "degenerate class: BER risk needs both labels present");
  }
  return 0.5 * (positive.Total() / n_positive + negative.Total() / n_negative);
}

}  // namespace labeldp
