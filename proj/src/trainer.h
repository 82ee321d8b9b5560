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

#ifndef LABELDP_TRAINER_H_
#define LABELDP_TRAINER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "em_core.h"
#include "losses.h"
#include "rng.h"

namespace labeldp {

// Two isotropic Gaussian classes in R^d with means +(m/2) e1 (label +1) and
// -(m/2) e1 (label -1), m = mean_separation, per-coordinate standard
// deviation covariance_scale.
struct SyntheticSpec {
  int dimension = 2;
  double mean_separation = 1.0;
  double covariance_scale = 1.0;
  double positive_fraction = 0.5;
  // Exact class counts per split instead of Bernoulli draws.
  bool stratified = true;
  int64_t test_size = 2000;

  absl::Status Validate() const;
};

// Row-major features with their true labels.
struct LabeledDataset {
  int dimension = 0;
  std::vector<double> features;
  LabelVector labels;
  // Position of every row in the generated population.
  std::vector<int64_t> indices;

  size_t size() const { return labels.size(); }
  std::span<const double> row(size_t i) const {
    return std::span<const double>(features).subspan(i * dimension, dimension);
  }
};

struct SyntheticSplit {
  LabeledDataset train;
  LabeledDataset test;
};

// Deterministic in (spec, n_train, rng state); train and test rows come
// from disjoint population indices.
absl::StatusOr<SyntheticSplit> GenerateSynthetic(const SyntheticSpec& spec,
                                                 int64_t n_train, Rng& rng);

enum class Mechanism { kEm, kRr };

// Features paired with privatized labels only. The clean labels of the
// source dataset are not reachable from here.
class TrainingSet {
 public:
  static absl::StatusOr<TrainingSet> Create(int dimension,
                                            std::vector<double> features,
                                            LabelVector noisy_labels);

  int dimension() const { return dimension_; }
  size_t size() const { return labels_.size(); }
  std::span<const double> row(size_t i) const {
    return std::span<const double>(features_).subspan(i * dimension_,
                                                      dimension_);
  }
  const LabelVector& noisy_labels() const { return labels_; }
  const std::vector<int64_t>& positives() const { return positives_; }
  const std::vector<int64_t>& negatives() const { return negatives_; }

 private:
  TrainingSet(int dimension, std::vector<double> features, LabelVector labels);

  int dimension_;
  std::vector<double> features_;
  LabelVector labels_;
  std::vector<int64_t> positives_;
  std::vector<int64_t> negatives_;
};

// Features paired with clean labels, for scoring only.
class EvaluationSet {
 public:
  static absl::StatusOr<EvaluationSet> Create(const LabeledDataset& clean);

  int dimension() const { return dimension_; }
  size_t size() const { return labels_.size(); }
  std::span<const double> row(size_t i) const {
    return std::span<const double>(features_).subspan(i * dimension_,
                                                      dimension_);
  }
  const LabelVector& labels() const { return labels_; }

 private:
  EvaluationSet(int dimension, std::vector<double> features, LabelVector labels)
      : dimension_(dimension),
        features_(std::move(features)),
        labels_(std::move(labels)) {}

  int dimension_;
  std::vector<double> features_;
  LabelVector labels_;
};

// Privatizes the labels of `clean` and keeps only the noisy copy.
absl::StatusOr<TrainingSet> PrivatizeTrainingSet(const LabeledDataset& clean,
                                                 Mechanism mechanism,
                                                 const PrivacyParams& params,
                                                 Rng& rng);

// Training on clean labels, for ceilings and sanity checks.
absl::StatusOr<TrainingSet> CleanTrainingSet(const LabeledDataset& clean);

enum class Architecture { kLinear, kMlp };

// f(x) = w.x + b, or f(x) = v.tanh(W x + c) + b with a hidden layer.
class Model {
 public:
  static constexpr int kDefaultHiddenWidth = 16;

  static Model Linear(int dimension);
  // Hidden weights ~ N(0, 1/d), output weights zero.
  static Model Mlp(int dimension, int width, Rng& rng);

  Architecture architecture() const { return architecture_; }
  int dimension() const { return dimension_; }
  int width() const { return width_; }
  std::span<const double> parameters() const { return parameters_; }
  std::span<double> mutable_parameters() { return parameters_; }

  double Score(std::span<const double> x) const;
  // Writes df/dtheta into `grad` (size = parameter count) and returns f(x).
  double ScoreAndGradient(std::span<const double> x,
                          std::span<double> grad) const;

 private:
  Model(Architecture architecture, int dimension, int width)
      : architecture_(architecture), dimension_(dimension), width_(width) {}

  Architecture architecture_;
  int dimension_;
  int width_;
  std::vector<double> parameters_;
};

enum class Objective { kAuc, kBer };

struct TrainConfig {
  LossSpec loss = *LossSpec::Create(LossKind::kBarrier);
  Objective objective = Objective::kBer;
  double learning_rate = 0.1;
  int epochs = 50;
  // Rows drawn per class for each BER step; 0 makes every step a full
  // pass. An epoch is ceil(n / (2 batch_per_class)) steps.
  int batch_per_class = 32;
  // Sampled positive/negative pairs per AUC step. An epoch is
  // ceil(n / pairs_per_step) steps.
  int pairs_per_step = 256;
  uint64_t seed = 0;

  absl::Status Validate() const;
};

struct TrainReport {
  // Training objective on the noisy labels before and after training.
  double initial_objective = 0.0;
  double final_objective = 0.0;
  int64_t steps = 0;
};

// Gradient descent on the BER risk (class-balanced) or on the AUC risk over
// sampled pairs, reading only the privatized labels.
absl::StatusOr<TrainReport> Train(const TrainingSet& data,
                                  const TrainConfig& config, Model& model);

// Objective value of `model` on `data` under `loss`; AUC uses every pair.
absl::StatusOr<double> TrainingObjective(const TrainingSet& data,
                                         const LossSpec& loss,
                                         Objective objective,
                                         const Model& model);

struct Evaluation {
  double auc_percent = 0.0;
  double balanced_accuracy_percent = 0.0;
};

// 100 (1 - risk) under the 0-1 loss, against clean labels.
absl::StatusOr<Evaluation> Evaluate(const Model& model,
                                    const EvaluationSet& test);

// Fraction of (positive, negative) pairs with s_p <= s_n, computed by
// sorting. Equal to AucRisk with the 0-1 loss.
double ZeroOneAucRisk(std::span<const double> scores_p,
                      std::span<const double> scores_n);

struct ExperimentGrid {
  std::vector<double> epsilons = {0.1, 0.5, 1.0, 1.5, 3.0, 5.0, 7.0};
  std::vector<LossSpec> losses = TrainableLosses();
  std::vector<int64_t> n_values = {1000};
  int repetitions = 10;
  Mechanism mechanism = Mechanism::kEm;
  double sensitivity = 1.0;
  SyntheticSpec data;
  Architecture architecture = Architecture::kLinear;
  // Template for every run; `loss` and `seed` are overwritten per run.
  TrainConfig train;
  uint64_t master_seed = 0;
  int threads = 1;

  absl::Status Validate() const;
};

inline constexpr const char* kMetricAuc = "auc";
inline constexpr const char* kMetricBalancedAccuracy = "balanced_accuracy";

struct GridRow {
  double epsilon = 0.0;
  std::string loss;
  int64_t n = 0;
  std::string metric;
  double mean = 0.0;
  // Sample standard deviation over repetitions (0 for one repetition).
  double std = 0.0;
  std::vector<double> values;
};

struct GridResult {
  std::vector<GridRow> rows;

  // Row for (epsilon, loss, n, metric), or nullptr.
  const GridRow* Find(double epsilon, const std::string& loss, int64_t n,
                      const std::string& metric) const;
};

// Every (epsilon, n, repetition) cell draws its data, privatization and
// training streams from the master seed by index, so the result does not
// depend on `threads`. All losses in a cell see the same noisy labels.
absl::StatusOr<GridResult> RunGrid(const ExperimentGrid& grid);

// Header epsilon,loss,n,metric,mean,std.
std::string GridResultCsv(const GridResult& result);

// One block per (n, metric): rows are epsilons, columns losses, cells
// "mean(std)" with the best mean of each row marked by '*'.
std::string GridResultText(const GridResult& result);

}  // namespace labeldp

#endif  // LABELDP_TRAINER_H_
