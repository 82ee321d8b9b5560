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

#include "trainer.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <tuple>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "numeric.h"

namespace labeldp {
namespace {

void Shuffle(std::vector<int64_t>& values, Rng& rng) {
  for (size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[rng.UniformInt(i)]);
  }
}

// Class labels for one split, in random order.
std::vector<int8_t> DrawLabels(const SyntheticSpec& spec, int64_t count,
                               Rng& rng) {
  std::vector<int8_t> labels(count, -1);
  if (spec.stratified) {
    const int64_t positives = static_cast<int64_t>(
        std::llround(spec.positive_fraction * static_cast<double>(count)));
    std::vector<int64_t> order(count);
    for (int64_t i = 0; i < count; ++i) order[i] = i;
    Shuffle(order, rng);
    for (int64_t i = 0; i < positives; ++i) labels[order[i]] = 1;
  } else {
    for (int8_t& label : labels) {
      label = rng.UniformDouble() < spec.positive_fraction ? 1 : -1;
    }
  }
  return labels;
}

absl::StatusOr<LabeledDataset> DrawSplit(const SyntheticSpec& spec,
                                         std::vector<int64_t> indices,
                                         Rng& rng) {
  const int64_t count = static_cast<int64_t>(indices.size());
  std::vector<int8_t> labels = DrawLabels(spec, count, rng);
  std::vector<double> features(count * spec.dimension);
  for (int64_t i = 0; i < count; ++i) {
    double* row = &features[i * spec.dimension];
    for (int k = 0; k < spec.dimension; ++k) {
      row[k] = spec.covariance_scale * rng.Normal();
    }
    row[0] += 0.5 * labels[i] * spec.mean_separation;
  }
  absl::StatusOr<LabelVector> vector = LabelVector::Create(std::move(labels));
  if (!vector.ok()) return vector.status();
  return LabeledDataset{spec.dimension, std::move(features), *std::move(vector),
                        std::move(indices)};
}

std::pair<std::vector<int64_t>, std::vector<int64_t>> SplitByClass(
    const LabelVector& labels) {
  std::vector<int64_t> positives;
  std::vector<int64_t> negatives;
  for (size_t i = 0; i < labels.size(); ++i) {
    (labels[i] > 0 ? positives : negatives).push_back(static_cast<int64_t>(i));
  }
  return {std::move(positives), std::move(negatives)};
}

int64_t StepsPerEpoch(const TrainConfig& config, int64_t n) {
  if (config.objective == Objective::kAuc) {
    return std::max<int64_t>(
        1, (n + config.pairs_per_step - 1) / config.pairs_per_step);
  }
  if (config.batch_per_class == 0) return 1;
  const int64_t per_step = 2 * static_cast<int64_t>(config.batch_per_class);
  return std::max<int64_t>(1, (n + per_step - 1) / per_step);
}

// Accumulates weight * dl/dz(z) * df/dtheta(x) into `grad`, with
// z = sign * f(x).
void AddTerm(const Model& model, const LossSpec& loss,
             std::span<const double> x, double sign, double weight,
             std::span<double> scratch, std::span<double> grad) {
  const double f = model.ScoreAndGradient(x, scratch);
  const double scale = weight * sign * *LossGrad(loss, sign * f);
  for (size_t k = 0; k < grad.size(); ++k) grad[k] += scale * scratch[k];
}

std::string CsvField(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

// Stream index for a grid coordinate, so that a cell's randomness does not
// depend on which other values share the grid.
uint64_t ValueKey(double value) { return std::bit_cast<uint64_t>(value); }

uint64_t ValueKey(const std::string& text) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) hash = (hash ^ c) * 0x100000001b3ULL;
  return hash;
}

std::string FormatEpsilon(double epsilon) {
  return absl::StrFormat("%g", epsilon);
}

}  // namespace

absl::Status SyntheticSpec::Validate() const {
  if (dimension < 1)
    return absl::InvalidArgumentError("dimension must be >= 1");
  if (!std::isfinite(mean_separation) || mean_separation < 0.0) {
    return absl::InvalidArgumentError("mean separation must be >= 0");
  }
  if (!std::isfinite(covariance_scale) || covariance_scale <= 0.0) {
    return absl::InvalidArgumentError("covariance scale must be > 0");
  }
  if (!(positive_fraction > 0.0 && positive_fraction < 1.0)) {
    return absl::InvalidArgumentError("positive fraction must lie in (0, 1)");
  }
  if (test_size < 2)
    return absl::InvalidArgumentError("test size must be >= 2");
  return absl::OkStatus();
}

absl::StatusOr<SyntheticSplit> GenerateSynthetic(const SyntheticSpec& spec,
                                                 int64_t n_train, Rng& rng) {
  if (absl::Status status = spec.Validate(); !status.ok()) return status;
  if (n_train < 2) return absl::InvalidArgumentError("n must be >= 2");
  const int64_t total = n_train + spec.test_size;
  std::vector<int64_t> population(total);
  for (int64_t i = 0; i < total; ++i) population[i] = i;
  Shuffle(population, rng);
  std::vector<int64_t> train_indices(population.begin(),
                                     population.begin() + n_train);
  std::vector<int64_t> test_indices(population.begin() + n_train,
                                    population.end());
  absl::StatusOr<LabeledDataset> train =
      DrawSplit(spec, std::move(train_indices), rng);
  if (!train.ok()) return train.status();
  absl::StatusOr<LabeledDataset> test =
      DrawSplit(spec, std::move(test_indices), rng);
  if (!test.ok()) return test.status();
  return SyntheticSplit{*std::move(train), *std::move(test)};
}

TrainingSet::TrainingSet(int dimension, std::vector<double> features,
                         LabelVector labels)
    : dimension_(dimension),
      features_(std::move(features)),
      labels_(std::move(labels)) {
  std::tie(positives_, negatives_) = SplitByClass(labels_);
}

absl::StatusOr<TrainingSet> TrainingSet::Create(int dimension,
                                                std::vector<double> features,
                                                LabelVector noisy_labels) {
  if (dimension < 1 ||
      features.size() != noisy_labels.size() * static_cast<size_t>(dimension)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%d feature values do not form %d rows of dimension %d",
                        features.size(), noisy_labels.size(), dimension));
  }
  return TrainingSet(dimension, std::move(features), std::move(noisy_labels));
}

absl::StatusOr<EvaluationSet> EvaluationSet::Create(
    const LabeledDataset& clean) {
  const int64_t positives = clean.labels.CountPositive();
  if (positives == 0 || positives == static_cast<int64_t>(clean.size())) {
    return absl::FailedPreconditionError(
        "degenerate class: evaluation set needs both labels");
  }
  if (clean.features.size() != clean.size() * clean.dimension) {
    return absl::InvalidArgumentError("feature matrix does not match labels");
  }
  return EvaluationSet(clean.dimension, clean.features, clean.labels);
}

absl::StatusOr<TrainingSet> PrivatizeTrainingSet(const LabeledDataset& clean,
                                                 Mechanism mechanism,
                                                 const PrivacyParams& params,
                                                 Rng& rng) {
  if (mechanism == Mechanism::kRr) {
    return TrainingSet::Create(
        clean.dimension, clean.features,
        ApplyRr(clean.labels, FlipProbability(params), rng));
  }
  absl::StatusOr<EmOutcome> outcome = ApplyEm(clean.labels, params, rng);
  if (!outcome.ok()) return outcome.status();
  return TrainingSet::Create(clean.dimension, clean.features,
                             std::move(outcome->output));
}

absl::StatusOr<TrainingSet> CleanTrainingSet(const LabeledDataset& clean) {
  return TrainingSet::Create(clean.dimension, clean.features, clean.labels);
}

Model Model::Linear(int dimension) {
  Model model(Architecture::kLinear, dimension, 0);
  model.parameters_.assign(dimension + 1, 0.0);
  return model;
}

Model Model::Mlp(int dimension, int width, Rng& rng) {
  Model model(Architecture::kMlp, dimension, width);
  model.parameters_.assign(width * dimension + 2 * width + 1, 0.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dimension));
  for (int k = 0; k < width * dimension; ++k) {
    model.parameters_[k] = scale * rng.Normal();
  }
  return model;
}

double Model::Score(std::span<const double> x) const {
  if (architecture_ == Architecture::kLinear) {
    double f = parameters_[dimension_];
    for (int j = 0; j < dimension_; ++j) f += parameters_[j] * x[j];
    return f;
  }
  const double* w = parameters_.data();
  const double* c = w + width_ * dimension_;
  const double* v = c + width_;
  double f = v[width_];
  for (int k = 0; k < width_; ++k) {
    double a = c[k];
    for (int j = 0; j < dimension_; ++j) a += w[k * dimension_ + j] * x[j];
    f += v[k] * std::tanh(a);
  }
  return f;
}

double Model::ScoreAndGradient(std::span<const double> x,
                               std::span<double> grad) const {
  if (architecture_ == Architecture::kLinear) {
    double f = parameters_[dimension_];
    for (int j = 0; j < dimension_; ++j) {
      f += parameters_[j] * x[j];
      grad[j] = x[j];
    }
    grad[dimension_] = 1.0;
    return f;
  }
  const double* w = parameters_.data();
  const double* c = w + width_ * dimension_;
  const double* v = c + width_;
  double* gw = grad.data();
  double* gc = gw + width_ * dimension_;
  double* gv = gc + width_;
  double f = v[width_];
  for (int k = 0; k < width_; ++k) {
    double a = c[k];
    for (int j = 0; j < dimension_; ++j) a += w[k * dimension_ + j] * x[j];
    const double h = std::tanh(a);
    const double back = v[k] * (1.0 - h * h);
    f += v[k] * h;
    for (int j = 0; j < dimension_; ++j) gw[k * dimension_ + j] = back * x[j];
    gc[k] = back;
    gv[k] = h;
  }
  gv[width_] = 1.0;
  return f;
}

absl::Status TrainConfig::Validate() const {
  if (!std::isfinite(learning_rate) || learning_rate < 0.0) {
    return absl::InvalidArgumentError("learning rate must be finite and >= 0");
  }
  if (epochs < 1) return absl::InvalidArgumentError("epochs must be >= 1");
  if (batch_per_class < 0) {
    return absl::InvalidArgumentError("batch per class must be >= 0");
  }
  if (pairs_per_step < 1) {
    return absl::InvalidArgumentError("pairs per step must be >= 1");
  }
  return absl::OkStatus();
}

absl::StatusOr<double> TrainingObjective(const TrainingSet& data,
                                         const LossSpec& loss,
                                         Objective objective,
                                         const Model& model) {
  std::vector<double> scores(data.size());
  for (size_t i = 0; i < data.size(); ++i) scores[i] = model.Score(data.row(i));
  if (objective == Objective::kBer) {
    return BerRisk(scores, data.noisy_labels().values(), loss);
  }
  std::vector<double> p;
  std::vector<double> n;
  for (int64_t i : data.positives()) p.push_back(scores[i]);
  for (int64_t i : data.negatives()) n.push_back(scores[i]);
  return AucRisk(p, n, loss);
}

absl::StatusOr<TrainReport> Train(const TrainingSet& data,
                                  const TrainConfig& config, Model& model) {
  if (absl::Status status = config.Validate(); !status.ok()) return status;
  if (!config.loss.trainable()) {
    return absl::FailedPreconditionError(
        absl::StrCat("non-trainable loss: ", config.loss.ToString()));
  }
  if (model.dimension() != data.dimension()) {
    return absl::InvalidArgumentError("model and data dimensions differ");
  }
  const std::vector<int64_t>& positives = data.positives();
  const std::vector<int64_t>& negatives = data.negatives();
  if (positives.empty() || negatives.empty()) {
    return absl::FailedPreconditionError(
        "degenerate class: privatized labels contain a single class");
  }
  TrainReport report;
  absl::StatusOr<double> initial =
      TrainingObjective(data, config.loss, config.objective, model);
  if (!initial.ok()) return initial.status();
  report.initial_objective = *initial;

  Rng rng = Rng::ForStream(config.seed, StreamTag::kTraining, 0);
  const size_t dim = model.parameters().size();
  std::vector<double> grad(dim);
  std::vector<double> scratch(dim);
  std::vector<double> scratch_n(dim);
  const int64_t steps =
      StepsPerEpoch(config, static_cast<int64_t>(data.size())) * config.epochs;
  for (int64_t step = 0; step < steps; ++step) {
    std::fill(grad.begin(), grad.end(), 0.0);
    if (config.objective == Objective::kAuc) {
      const double weight = 1.0 / config.pairs_per_step;
      for (int m = 0; m < config.pairs_per_step; ++m) {
        const int64_t i = positives[rng.UniformInt(positives.size())];
        const int64_t j = negatives[rng.UniformInt(negatives.size())];
        const double fi = model.ScoreAndGradient(data.row(i), scratch);
        const double fj = model.ScoreAndGradient(data.row(j), scratch_n);
        const double scale = weight * *LossGrad(config.loss, fi - fj);
        for (size_t k = 0; k < dim; ++k) {
          grad[k] += scale * (scratch[k] - scratch_n[k]);
        }
      }
    } else if (config.batch_per_class == 0) {
      const double wp = 0.5 / positives.size();
      const double wn = 0.5 / negatives.size();
      for (int64_t i : positives) {
        AddTerm(model, config.loss, data.row(i), 1.0, wp, scratch, grad);
      }
      for (int64_t i : negatives) {
        AddTerm(model, config.loss, data.row(i), -1.0, wn, scratch, grad);
      }
    } else {
      const double weight = 0.5 / config.batch_per_class;
      for (int b = 0; b < config.batch_per_class; ++b) {
        const int64_t i = positives[rng.UniformInt(positives.size())];
        AddTerm(model, config.loss, data.row(i), 1.0, weight, scratch, grad);
      }
      for (int b = 0; b < config.batch_per_class; ++b) {
        const int64_t i = negatives[rng.UniformInt(negatives.size())];
        AddTerm(model, config.loss, data.row(i), -1.0, weight, scratch, grad);
      }
    }
    std::span<double> theta = model.mutable_parameters();
    for (size_t k = 0; k < dim; ++k) theta[k] -= config.learning_rate * grad[k];
  }
  for (double value : model.parameters()) {
    if (!std::isfinite(value)) {
      return absl::InternalError(
          absl::StrCat("training diverged with loss ", config.loss.ToString()));
    }
  }
  report.steps = steps;
  absl::StatusOr<double> final_objective =
      TrainingObjective(data, config.loss, config.objective, model);
  if (!final_objective.ok()) return final_objective.status();
  report.final_objective = *final_objective;
  return report;
}

double ZeroOneAucRisk(std::span<const double> scores_p,
                      std::span<const double> scores_n) {
  std::vector<double> sorted(scores_n.begin(), scores_n.end());
  std::sort(sorted.begin(), sorted.end());
  int64_t losses = 0;
  for (double p : scores_p) {
    losses += sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), p);
  }
  return static_cast<double>(losses) /
         (static_cast<double>(scores_p.size()) * scores_n.size());
}

absl::StatusOr<Evaluation> Evaluate(const Model& model,
                                    const EvaluationSet& test) {
  if (model.dimension() != test.dimension()) {
    return absl::InvalidArgumentError("model and data dimensions differ");
  }
  std::vector<double> scores(test.size());
  std::vector<double> p;
  std::vector<double> n;
  for (size_t i = 0; i < test.size(); ++i) {
    scores[i] = model.Score(test.row(i));
    (test.labels()[i] > 0 ? p : n).push_back(scores[i]);
  }
  const LossSpec zero_one = *LossSpec::Create(LossKind::kZeroOne);
  absl::StatusOr<double> ber =
      BerRisk(scores, test.labels().values(), zero_one);
  if (!ber.ok()) return ber.status();
  return Evaluation{100.0 * (1.0 - ZeroOneAucRisk(p, n)), 100.0 * (1.0 - *ber)};
}

absl::Status ExperimentGrid::Validate() const {
  if (epsilons.empty() || losses.empty() || n_values.empty()) {
    return absl::InvalidArgumentError(
        "epsilon, loss and n lists must be non-empty");
  }
  for (double epsilon : epsilons) {
    absl::StatusOr<PrivacyParams> params =
        PrivacyParams::Create(epsilon, sensitivity);
    if (!params.ok()) return params.status();
  }
  for (const LossSpec& loss : losses) {
    if (!loss.trainable()) {
      return absl::FailedPreconditionError(
          absl::StrCat("non-trainable loss: ", loss.ToString()));
    }
  }
  for (int64_t n : n_values) {
    if (n < 2) return absl::InvalidArgumentError("every n must be >= 2");
  }
  if (repetitions < 1) {
    return absl::InvalidArgumentError("repetitions must be >= 1");
  }
  if (threads < 1) return absl::InvalidArgumentError("threads must be >= 1");
  if (absl::Status status = data.Validate(); !status.ok()) return status;
  return train.Validate();
}

const GridRow* GridResult::Find(double epsilon, const std::string& loss,
                                int64_t n, const std::string& metric) const {
  for (const GridRow& row : rows) {
    if (row.epsilon == epsilon && row.loss == loss && row.n == n &&
        row.metric == metric) {
      return &row;
    }
  }
  return nullptr;
}

absl::StatusOr<GridResult> RunGrid(const ExperimentGrid& grid) {
  if (absl::Status status = grid.Validate(); !status.ok()) return status;
  const size_t n_eps = grid.epsilons.size();
  const size_t n_loss = grid.losses.size();
  const size_t n_sizes = grid.n_values.size();
  const size_t reps = grid.repetitions;
  const size_t tasks = n_sizes * reps * n_eps;
  // results[task][loss] for task = (size, rep, epsilon) in row-major order.
  std::vector<std::vector<Evaluation>> results(tasks,
                                               std::vector<Evaluation>(n_loss));
  std::vector<absl::Status> errors(tasks);

  auto run_task = [&](size_t task) -> absl::Status {
    const size_t e = task % n_eps;
    const size_t r = (task / n_eps) % reps;
    const size_t s = task / (n_eps * reps);
    const int64_t n = grid.n_values[s];
    const double epsilon = grid.epsilons[e];
    Rng data_rng =
        Rng::ForStream(grid.master_seed, StreamTag::kSyntheticData, r).Split(n);
    absl::StatusOr<SyntheticSplit> split =
        GenerateSynthetic(grid.data, n, data_rng);
    if (!split.ok()) return split.status();
    absl::StatusOr<EvaluationSet> test = EvaluationSet::Create(split->test);
    if (!test.ok()) return test.status();
    absl::StatusOr<PrivacyParams> params =
        PrivacyParams::Create(epsilon, grid.sensitivity);
    if (!params.ok()) return params.status();
    Rng privatize_rng =
        Rng::ForStream(grid.master_seed, StreamTag::kPrivatize, r)
            .Split(n)
            .Split(ValueKey(epsilon));
    absl::StatusOr<TrainingSet> train = PrivatizeTrainingSet(
        split->train, grid.mechanism, *params, privatize_rng);
    if (!train.ok()) return train.status();
    for (size_t l = 0; l < n_loss; ++l) {
      Rng init_rng =
          Rng::ForStream(grid.master_seed, StreamTag::kModelInit, r).Split(n);
      Model model = grid.architecture == Architecture::kLinear
                        ? Model::Linear(grid.data.dimension)
                        : Model::Mlp(grid.data.dimension,
                                     Model::kDefaultHiddenWidth, init_rng);
      TrainConfig config = grid.train;
      config.loss = grid.losses[l];
      config.seed = Rng::ForStream(grid.master_seed, StreamTag::kTraining, r)
                        .Split(n)
                        .Split(ValueKey(epsilon))
                        .Split(ValueKey(config.loss.ToString()))
                        .key();
      absl::StatusOr<TrainReport> report = Train(*train, config, model);
      if (!report.ok()) return report.status();
      absl::StatusOr<Evaluation> evaluation = Evaluate(model, *test);
      if (!evaluation.ok()) return evaluation.status();
      results[task][l] = *evaluation;
    }
    return absl::OkStatus();
  };

  const size_t workers = std::min<size_t>(grid.threads, tasks);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t task = next++; task < tasks; task = next++) {
      errors[task] = run_task(task);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& thread : pool) thread.join();
  }
  for (const absl::Status& status : errors) {
    if (!status.ok()) return status;
  }

  GridResult result;
  for (size_t e = 0; e < n_eps; ++e) {
    for (size_t l = 0; l < n_loss; ++l) {
      for (size_t s = 0; s < n_sizes; ++s) {
        for (const char* metric : {kMetricAuc, kMetricBalancedAccuracy}) {
          GridRow row{grid.epsilons[e],
                      grid.losses[l].ToString(),
                      grid.n_values[s],
                      metric,
                      0.0,
                      0.0,
                      {}};
          CompensatedSum sum;
          for (size_t r = 0; r < reps; ++r) {
            const Evaluation& ev = results[(s * reps + r) * n_eps + e][l];
            const double value = metric == kMetricAuc
                                     ? ev.auc_percent
                                     : ev.balanced_accuracy_percent;
            row.values.push_back(value);
            sum.Add(value);
          }
          row.mean = sum.Total() / reps;
          if (reps > 1) {
            CompensatedSum squares;
            for (double value : row.values) {
              squares.Add((value - row.mean) * (value - row.mean));
            }
            row.std = std::sqrt(squares.Total() / (reps - 1));
          }
          result.rows.push_back(std::move(row));
        }
      }
    }
  }
  return result;
}

std::string GridResultCsv(const GridResult& result) {
  std::string out = "epsilon,loss,n,metric,mean,std\n";
  for (const GridRow& row : result.rows) {
    absl::StrAppendFormat(&out, "%s,%s,%d,%s,%.4f,%.4f\n",
                          FormatEpsilon(row.epsilon), CsvField(row.loss), row.n,
                          row.metric, row.mean, row.std);
  }
  return out;
}

std::string GridResultText(const GridResult& result) {
  // Preserve first-appearance order of every key.
  std::vector<std::pair<int64_t, std::string>> blocks;
  std::vector<double> epsilons;
  std::vector<std::string> losses;
  std::map<std::tuple<int64_t, std::string, double, std::string>,
           const GridRow*>
      index;
  for (const GridRow& row : result.rows) {
    const std::pair<int64_t, std::string> block{row.n, row.metric};
    if (std::find(blocks.begin(), blocks.end(), block) == blocks.end()) {
      blocks.push_back(block);
    }
    if (std::find(epsilons.begin(), epsilons.end(), row.epsilon) ==
        epsilons.end()) {
      epsilons.push_back(row.epsilon);
    }
    if (std::find(losses.begin(), losses.end(), row.loss) == losses.end()) {
      losses.push_back(row.loss);
    }
    index[{row.n, row.metric, row.epsilon, row.loss}] = &row;
  }
  size_t width = 12;
  for (const std::string& loss : losses) width = std::max(width, loss.size());
  std::string out;
  for (const auto& [n, metric] : blocks) {
    absl::StrAppendFormat(&out, "%s, n=%d, mean(std) over repetitions\n",
                          metric, n);
    absl::StrAppendFormat(&out, "%-8s", "epsilon");
    for (const std::string& loss : losses) {
      absl::StrAppendFormat(&out, "  %*s", width, loss);
    }
    out += "\n";
    for (double epsilon : epsilons) {
      double best = -std::numeric_limits<double>::infinity();
      for (const std::string& loss : losses) {
        auto it = index.find({n, metric, epsilon, loss});
        if (it != index.end()) best = std::max(best, it->second->mean);
      }
      absl::StrAppendFormat(&out, "%-8s", FormatEpsilon(epsilon));
      for (const std::string& loss : losses) {
        auto it = index.find({n, metric, epsilon, loss});
        std::string cell = "-";
        if (it != index.end()) {
          const GridRow& row = *it->second;
          cell = absl::StrFormat("%.1f(%.1f)%s", row.mean, row.std,
                                 row.mean == best ? "*" : " ");
        }
        absl::StrAppendFormat(&out, "  %*s", width, cell);
      }
      out += "\n";
    }
    out += "\n";
  }
  return out;
}

}  // namespace labeldp
