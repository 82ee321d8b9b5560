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

#include <cmath>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "budget.h"
#include "checks.h"
#include "em_core.h"
#include "label_io.h"
#include "labeldp/labeldp.h"
#include "losses.h"
#include "trainer.h"
#include "truncbin.h"

struct ldp_text {
  std::string value;
};

struct ldp_labels {
  labeldp::LabelFile file;
};

namespace {

thread_local std::string last_error;

ldp_status ToCode(absl::StatusCode code) {
  switch (code) {
    case absl::StatusCode::kOk:
      return LDP_OK;
    case absl::StatusCode::kInvalidArgument:
      return LDP_INVALID_ARGUMENT;
    case absl::StatusCode::kOutOfRange:
      return LDP_OUT_OF_RANGE;
    case absl::StatusCode::kFailedPrecondition:
      return LDP_FAILED_PRECONDITION;
    case absl::StatusCode::kDataLoss:
      return LDP_DATA_LOSS;
    case absl::StatusCode::kNotFound:
      return LDP_NOT_FOUND;
    default:
      return LDP_INTERNAL;
  }
}

ldp_status Report(const absl::Status& status) {
  if (!status.ok()) last_error = std::string(status.message());
  return ToCode(status.code());
}

ldp_status NullArgument(const char* name) {
  return Report(absl::InvalidArgumentError(
      absl::StrCat("null pointer passed for '", name, "'")));
}

// Runs `body`, turning escaped exceptions into LDP_INTERNAL.
template <typename Body>
ldp_status Guard(Body&& body) {
  try {
    return Report(body());
  } catch (const std::exception& e) {
    return Report(absl::InternalError(e.what()));
  }
}

ldp_text* NewText(std::string value) { return new ldp_text{std::move(value)}; }

absl::StatusOr<labeldp::PrivacyParams> ReleaseParams(double epsilon,
                                                     double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "epsilon must be positive and finite for a release, got ", epsilon));
  }
  return labeldp::PrivacyParams::Create(epsilon, delta);
}

std::vector<std::string> DefaultIds(size_t n) {
  std::vector<std::string> ids(n);
  for (size_t i = 0; i < n; ++i) ids[i] = std::to_string(i + 1);
  return ids;
}

}  // namespace

extern "C" {

const char* ldp_last_error(void) { return last_error.c_str(); }

const char* ldp_version(void) { return "1.0.0"; }

const char* ldp_text_data(const ldp_text* text) {
  return text == nullptr ? "" : text->value.c_str();
}

size_t ldp_text_size(const ldp_text* text) {
  return text == nullptr ? 0 : text->value.size();
}

void ldp_text_free(ldp_text* text) { delete text; }

ldp_status ldp_labels_create(const int8_t* values, size_t n, ldp_labels** out) {
  if (values == nullptr) return NullArgument("values");
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::LabelVector> labels =
        labeldp::LabelVector::Create(std::vector<int8_t>(values, values + n));
    if (!labels.ok()) return labels.status();
    *out = new ldp_labels{{DefaultIds(n), *std::move(labels)}};
    return absl::OkStatus();
  });
}

ldp_status ldp_labels_read_csv(const char* path, ldp_labels** out) {
  if (path == nullptr) return NullArgument("path");
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::LabelFile> file = labeldp::ReadLabelCsv(path);
    if (!file.ok()) return file.status();
    *out = new ldp_labels{*std::move(file)};
    return absl::OkStatus();
  });
}

ldp_status ldp_labels_parse_csv(const char* text, size_t size,
                                ldp_labels** out) {
  if (text == nullptr) return NullArgument("text");
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::LabelFile> file =
        labeldp::ParseLabelCsv(std::string_view(text, size));
    if (!file.ok()) return file.status();
    *out = new ldp_labels{*std::move(file)};
    return absl::OkStatus();
  });
}

ldp_status ldp_labels_write_csv(const ldp_labels* labels, const char* path) {
  if (labels == nullptr) return NullArgument("labels");
  if (path == nullptr) return NullArgument("path");
  return Guard([&] {
    return labeldp::WriteLabelCsv(path, labels->file.ids, labels->file.labels);
  });
}

ldp_status ldp_labels_format_csv(const ldp_labels* labels, ldp_text** out) {
  if (labels == nullptr) return NullArgument("labels");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    *out =
        NewText(labeldp::FormatLabelCsv(labels->file.ids, labels->file.labels));
    return absl::OkStatus();
  });
}

size_t ldp_labels_size(const ldp_labels* labels) {
  return labels == nullptr ? 0 : labels->file.labels.size();
}

ldp_status ldp_labels_values(const ldp_labels* labels, int8_t* out,
                             size_t capacity) {
  if (labels == nullptr) return NullArgument("labels");
  if (out == nullptr && capacity > 0) return NullArgument("out");
  const size_t count = std::min(capacity, labels->file.labels.size());
  for (size_t i = 0; i < count; ++i) out[i] = labels->file.labels[i];
  return LDP_OK;
}

int64_t ldp_labels_hamming(const ldp_labels* a, const ldp_labels* b) {
  if (a == nullptr || b == nullptr ||
      a->file.labels.size() != b->file.labels.size()) {
    return -1;
  }
  return a->file.labels.HammingDistance(b->file.labels);
}

void ldp_labels_free(ldp_labels* labels) { delete labels; }

ldp_status ldp_privatize(const ldp_labels* input, double epsilon, double delta,
                         uint64_t seed, ldp_labels** output,
                         ldp_em_record* record) {
  if (input == nullptr) return NullArgument("input");
  if (output == nullptr) return NullArgument("output");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::PrivacyParams> params =
        ReleaseParams(epsilon, delta);
    if (!params.ok()) return params.status();
    absl::StatusOr<labeldp::PrivatizationRecord> result =
        labeldp::Privatize(input->file.labels, *params, seed);
    if (!result.ok()) return result.status();
    if (record != nullptr) {
      *record = ldp_em_record{
          epsilon,       delta,
          seed,          static_cast<int64_t>(result->output.size()),
          result->score, result->flip_count};
    }
    *output = new ldp_labels{{input->file.ids, std::move(result->output)}};
    return absl::OkStatus();
  });
}

ldp_status ldp_em_record_json(const ldp_em_record* record, ldp_text** out) {
  if (record == nullptr) return NullArgument("record");
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::PrivacyParams> params =
        labeldp::PrivacyParams::Create(record->epsilon, record->delta);
    if (!params.ok()) return params.status();
    // The sidecar reports n through the output labels, so a placeholder
    // vector of the right length stands in for them.
    absl::StatusOr<labeldp::LabelVector> placeholder =
        labeldp::LabelVector::Create(
            std::vector<int8_t>(static_cast<size_t>(record->n), 1));
    if (!placeholder.ok()) return placeholder.status();
    const labeldp::PrivatizationRecord full{*params, record->seed,
                                            record->score, record->flip_count,
                                            *std::move(placeholder)};
    *out = NewText(labeldp::PrivatizationRecordJson(full));
    return absl::OkStatus();
  });
}

ldp_status ldp_randomized_response(const ldp_labels* input, double epsilon,
                                   double delta, uint64_t seed,
                                   ldp_labels** output, int64_t* flip_count) {
  if (input == nullptr) return NullArgument("input");
  if (output == nullptr) return NullArgument("output");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::PrivacyParams> params =
        ReleaseParams(epsilon, delta);
    if (!params.ok()) return params.status();
    labeldp::LabelVector noisy = labeldp::ApplyRr(
        input->file.labels, labeldp::FlipProbability(*params), seed);
    if (flip_count != nullptr) {
      *flip_count = noisy.HammingDistance(input->file.labels);
    }
    *output = new ldp_labels{{input->file.ids, std::move(noisy)}};
    return absl::OkStatus();
  });
}

ldp_status ldp_flip_probability(double epsilon, double delta, double* p) {
  if (p == nullptr) return NullArgument("p");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::PrivacyParams> params =
        labeldp::PrivacyParams::Create(epsilon, delta);
    if (!params.ok()) return params.status();
    *p = labeldp::FlipProbability(*params).flip_probability();
    return absl::OkStatus();
  });
}

ldp_status ldp_score_distribution(int64_t n, double epsilon, double delta,
                                  double* log_probs) {
  if (log_probs == nullptr) return NullArgument("log_probs");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::PrivacyParams> params =
        labeldp::PrivacyParams::Create(epsilon, delta);
    if (!params.ok()) return params.status();
    absl::StatusOr<labeldp::ScoreDistribution> dist =
        labeldp::ComputeScoreDistribution(n, *params);
    if (!dist.ok()) return dist.status();
    std::copy(dist->log_probs.begin(), dist->log_probs.end(), log_probs);
    return absl::OkStatus();
  });
}

ldp_status ldp_trunc_binom(int64_t n, int64_t lower, int64_t upper, double p,
                           double* out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::TruncatedSumQuery> query =
        labeldp::TruncatedSumQuery::Create(n, lower, upper, p);
    if (!query.ok()) return query.status();
    *out = labeldp::TruncBinom(*query);
    return absl::OkStatus();
  });
}

ldp_status ldp_upper_trunc(int64_t n, int64_t j, double p, double* out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<double> value = labeldp::UpperTrunc(n, j, p);
    if (!value.ok()) return value.status();
    *out = *value;
    return absl::OkStatus();
  });
}

ldp_status ldp_success_probability(int64_t n, double epsilon, double delta,
                                   double* out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
    absl::StatusOr<labeldp::PrivacyParams> params =
        labeldp::PrivacyParams::Create(epsilon, delta);
    if (!params.ok()) return params.status();
    *out = labeldp::SuccessProbability(n, *params);
    return absl::OkStatus();
  });
}

ldp_status ldp_hoeffding_lower_bound(int64_t n, double j, double p,
                                     double* out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    if (n < 1 || !(p >= 0.0 && p <= 1.0) || !std::isfinite(j)) {
      return absl::InvalidArgumentError(
          "need n >= 1, finite j and p in [0, 1]");
    }
    *out = labeldp::HoeffdingLowerBound(n, j, p);
    return absl::OkStatus();
  });
}

ldp_status ldp_normal_approx(int64_t n, int64_t lower, int64_t upper, double p,
                             int continuity_correction, double* out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::TruncatedSumQuery> query =
        labeldp::TruncatedSumQuery::Create(n, lower, upper, p);
    if (!query.ok()) return query.status();
    absl::StatusOr<double> value = labeldp::NormalApprox(
        *query, {.continuity_correction = continuity_correction != 0});
    if (!value.ok()) return value.status();
    *out = *value;
    return absl::OkStatus();
  });
}

ldp_status ldp_concentration(int64_t n, double p, double window, double* out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<double> value = labeldp::ConcentrationCheck(n, p, window);
    if (!value.ok()) return value.status();
    *out = *value;
    return absl::OkStatus();
  });
}

ldp_status ldp_interchange_point(int64_t n0, int64_t k, double p, int64_t cap,
                                 int64_t* interchange, int* cap_exceeded) {
  if (interchange == nullptr) return NullArgument("interchange");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::InterchangeResult> result =
        labeldp::InterchangePoint(n0, k, p, cap);
    if (!result.ok()) return result.status();
    *interchange = result->interchange;
    if (cap_exceeded != nullptr) *cap_exceeded = result->cap_exceeded;
    return absl::OkStatus();
  });
}

ldp_status ldp_scan(int property_id, int64_t n_min, int64_t n_max,
                    const double* p_values, size_t p_count,
                    const int64_t* offsets, size_t offset_count, int* held,
                    ldp_text** json) {
  if (p_values == nullptr && p_count > 0) return NullArgument("p_values");
  if (offsets == nullptr && offset_count > 0) return NullArgument("offsets");
  return Guard([&]() -> absl::Status {
    labeldp::ScanGrid grid;
    grid.n_min = n_min;
    grid.n_max = n_max;
    grid.p_grid.assign(p_values, p_values + p_count);
    grid.offsets.assign(offsets, offsets + offset_count);
    absl::StatusOr<labeldp::MonotonicityReport> report =
        labeldp::ScanMonotonicity(property_id, grid);
    if (!report.ok()) return report.status();
    if (held != nullptr) *held = report->Held();
    if (json != nullptr) {
      *json = NewText(labeldp::MonotonicityReportJson(*report));
    }
    return absl::OkStatus();
  });
}

ldp_status ldp_half_point_series(int64_t n_min, int64_t n_max,
                                 const double* p_values, size_t p_count,
                                 ldp_text** csv) {
  if (p_values == nullptr && p_count > 0) return NullArgument("p_values");
  if (csv == nullptr) return NullArgument("csv");
  return Guard([&]() -> absl::Status {
    if (n_min < 1 || n_max < n_min) {
      return absl::InvalidArgumentError("need 1 <= n_min <= n_max");
    }
    for (size_t i = 0; i < p_count; ++i) {
      if (!(p_values[i] >= 0.0 && p_values[i] <= 1.0)) {
        return absl::InvalidArgumentError("p values must lie in [0, 1]");
      }
    }
    *csv = NewText(labeldp::HalfPointSeriesCsv(
        n_min, n_max, std::vector<double>(p_values, p_values + p_count)));
    return absl::OkStatus();
  });
}

ldp_status ldp_degrade(double epsilon, double delta, const int64_t* n_values,
                       size_t n_count, int bins, double window,
                       ldp_text** csv) {
  if (n_values == nullptr && n_count > 0) return NullArgument("n_values");
  if (csv == nullptr) return NullArgument("csv");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::PrivacyParams> params =
        labeldp::PrivacyParams::Create(epsilon, delta);
    if (!params.ok()) return params.status();
    absl::StatusOr<std::string> text = labeldp::DegradationCsv(
        *params, std::vector<int64_t>(n_values, n_values + n_count), bins,
        window);
    if (!text.ok()) return text.status();
    *csv = NewText(*std::move(text));
    return absl::OkStatus();
  });
}

ldp_status ldp_min_budget(int64_t n, double flip_fraction, double confidence,
                          double delta, int* applicable, double* epsilon) {
  if (applicable == nullptr) return NullArgument("applicable");
  if (epsilon == nullptr) return NullArgument("epsilon");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::BudgetQuery> query =
        labeldp::BudgetQuery::Create(n, flip_fraction, confidence, delta);
    if (!query.ok()) return query.status();
    const labeldp::BudgetResult result = labeldp::MinBudget(*query);
    *applicable = result.applicable();
    *epsilon = result.epsilon_min.value_or(0.0);
    return absl::OkStatus();
  });
}

ldp_status ldp_half_flip_budget(int64_t n, double delta, int* applicable,
                                double* epsilon) {
  if (applicable == nullptr) return NullArgument("applicable");
  if (epsilon == nullptr) return NullArgument("epsilon");
  return Guard([&]() -> absl::Status {
    if (n < 1 || !(delta > 0.0) || !std::isfinite(delta)) {
      return absl::InvalidArgumentError("need n >= 1 and delta > 0");
    }
    const labeldp::BudgetResult result = labeldp::HalfFlipBudget(n, delta);
    *applicable = result.applicable();
    *epsilon = result.epsilon_min.value_or(0.0);
    return absl::OkStatus();
  });
}

ldp_status ldp_success_for_budget(int64_t n, double epsilon, double delta,
                                  double flip_fraction, double* exact,
                                  double* hoeffding) {
  if (exact == nullptr) return NullArgument("exact");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::SuccessForBudget> result =
        labeldp::SuccessAtBudget(n, epsilon, delta, flip_fraction);
    if (!result.ok()) return result.status();
    *exact = result->exact;
    if (hoeffding != nullptr) *hoeffding = result->hoeffding;
    return absl::OkStatus();
  });
}

ldp_status ldp_budget_table(double confidence, double delta,
                            ldp_table_format format, ldp_text** out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    if (!(confidence > 0.0 && confidence < 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("confidence must lie in (0, 1), got ", confidence));
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
      return absl::InvalidArgumentError("delta must be positive");
    }
    const labeldp::BudgetTable table =
        labeldp::ComputeBudgetTable(confidence, labeldp::DefaultTableSizes(),
                                    labeldp::DefaultFlipPercents(), delta);
    switch (format) {
      case LDP_TABLE_CSV:
        *out = NewText(labeldp::BudgetTableCsv(table));
        break;
      case LDP_TABLE_JSON:
        *out = NewText(labeldp::BudgetTableJson(table));
        break;
      case LDP_TABLE_TEXT:
        *out = NewText(labeldp::BudgetTableText(table));
        break;
      default:
        return absl::InvalidArgumentError("unknown table format");
    }
    return absl::OkStatus();
  });
}

ldp_status ldp_budget_table_check(double confidence, const char* golden_path,
                                  int* matches, ldp_text** report) {
  if (matches == nullptr) return NullArgument("matches");
  return Guard([&]() -> absl::Status {
    std::string golden;
    if (golden_path != nullptr) {
      absl::StatusOr<std::string> text = labeldp::ReadTextFile(golden_path);
      if (!text.ok()) return text.status();
      golden = *std::move(text);
    } else {
      golden = std::string(labeldp::GoldenTableCsv(confidence));
      if (golden.empty()) {
        return absl::NotFoundError(absl::StrCat(
            "no embedded golden table for confidence ", confidence));
      }
    }
    const labeldp::BudgetTable table =
        labeldp::ComputeBudgetTable(confidence, labeldp::DefaultTableSizes(),
                                    labeldp::DefaultFlipPercents());
    absl::StatusOr<labeldp::TableDiff> diff =
        labeldp::CompareWithGolden(table, golden);
    if (!diff.ok()) return diff.status();
    *matches = diff->Matches();
    if (report != nullptr) {
      std::string text = absl::StrCat(diff->compared_cells, " cells compared, ",
                                      diff->mismatches.size(), " mismatches\n");
      for (const std::string& line : diff->mismatches) {
        absl::StrAppend(&text, line, "\n");
      }
      *report = NewText(std::move(text));
    }
    return absl::OkStatus();
  });
}

ldp_status ldp_loss_value(const char* loss, double z, double* out) {
  if (loss == nullptr) return NullArgument("loss");
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::LossSpec> spec = labeldp::LossSpec::Parse(loss);
    if (!spec.ok()) return spec.status();
    *out = labeldp::LossValue(*spec, z);
    return absl::OkStatus();
  });
}

ldp_status ldp_loss_grad(const char* loss, double z, double* out) {
  if (loss == nullptr) return NullArgument("loss");
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    absl::StatusOr<labeldp::LossSpec> spec = labeldp::LossSpec::Parse(loss);
    if (!spec.ok()) return spec.status();
    absl::StatusOr<double> grad = labeldp::LossGrad(*spec, z);
    if (!grad.ok()) return grad.status();
    *out = *grad;
    return absl::OkStatus();
  });
}

void ldp_experiment_config_init(ldp_experiment_config* config) {
  if (config == nullptr) return;
  const labeldp::ExperimentGrid grid;
  *config = ldp_experiment_config{};
  config->repetitions = grid.repetitions;
  config->mechanism = LDP_MECHANISM_EM;
  config->delta = grid.sensitivity;
  config->dimension = grid.data.dimension;
  config->mean_separation = grid.data.mean_separation;
  config->covariance_scale = grid.data.covariance_scale;
  config->positive_fraction = grid.data.positive_fraction;
  config->stratified = grid.data.stratified;
  config->test_size = grid.data.test_size;
  config->architecture = LDP_ARCHITECTURE_LINEAR;
  config->objective = LDP_OBJECTIVE_BER;
  config->learning_rate = grid.train.learning_rate;
  config->epochs = grid.train.epochs;
  config->batch_per_class = grid.train.batch_per_class;
  config->pairs_per_step = grid.train.pairs_per_step;
  config->master_seed = grid.master_seed;
  config->threads = grid.threads;
}

ldp_status ldp_experiment_run(const ldp_experiment_config* config,
                              ldp_text** csv, ldp_text** table) {
  if (config == nullptr) return NullArgument("config");
  if (config->epsilons == nullptr && config->epsilon_count > 0) {
    return NullArgument("epsilons");
  }
  if (config->losses == nullptr && config->loss_count > 0) {
    return NullArgument("losses");
  }
  if (config->n_values == nullptr && config->n_count > 0) {
    return NullArgument("n_values");
  }
  return Guard([&]() -> absl::Status {
    labeldp::ExperimentGrid grid;
    if (config->epsilon_count > 0) {
      grid.epsilons.assign(config->epsilons,
                           config->epsilons + config->epsilon_count);
    }
    if (config->loss_count > 0) {
      grid.losses.clear();
      for (size_t i = 0; i < config->loss_count; ++i) {
        if (config->losses[i] == nullptr)
          return absl::InvalidArgumentError("null loss name");
        absl::StatusOr<labeldp::LossSpec> spec =
            labeldp::LossSpec::Parse(config->losses[i]);
        if (!spec.ok()) return spec.status();
        grid.losses.push_back(*spec);
      }
    }
    if (config->n_count > 0) {
      grid.n_values.assign(config->n_values,
                           config->n_values + config->n_count);
    }
    grid.repetitions = config->repetitions;
    switch (config->mechanism) {
      case LDP_MECHANISM_EM:
        grid.mechanism = labeldp::Mechanism::kEm;
        break;
      case LDP_MECHANISM_RR:
        grid.mechanism = labeldp::Mechanism::kRr;
        break;
      default:
        return absl::InvalidArgumentError("unknown mechanism");
    }
    grid.sensitivity = config->delta;
    grid.data.dimension = config->dimension;
    grid.data.mean_separation = config->mean_separation;
    grid.data.covariance_scale = config->covariance_scale;
    grid.data.positive_fraction = config->positive_fraction;
    grid.data.stratified = config->stratified != 0;
    grid.data.test_size = config->test_size;
    switch (config->architecture) {
      case LDP_ARCHITECTURE_LINEAR:
        grid.architecture = labeldp::Architecture::kLinear;
        break;
      case LDP_ARCHITECTURE_MLP:
        grid.architecture = labeldp::Architecture::kMlp;
        break;
      default:
        return absl::InvalidArgumentError("unknown architecture");
    }
    switch (config->objective) {
      case LDP_OBJECTIVE_BER:
        grid.train.objective = labeldp::Objective::kBer;
        break;
      case LDP_OBJECTIVE_AUC:
        grid.train.objective = labeldp::Objective::kAuc;
        break;
      default:
        return absl::InvalidArgumentError("unknown objective");
    }
    grid.train.learning_rate = config->learning_rate;
    grid.train.epochs = config->epochs;
    grid.train.batch_per_class = config->batch_per_class;
    grid.train.pairs_per_step = config->pairs_per_step;
    grid.master_seed = config->master_seed;
    grid.threads = config->threads;
    absl::StatusOr<labeldp::GridResult> result = labeldp::RunGrid(grid);
    if (!result.ok()) return result.status();
    if (csv != nullptr) *csv = NewText(labeldp::GridResultCsv(*result));
    if (table != nullptr) *table = NewText(labeldp::GridResultText(*result));
    return absl::OkStatus();
  });
}

ldp_status ldp_check_run(int inject_recursion_fault, const char* golden_dir,
                         int* passed, ldp_text** json) {
  if (passed == nullptr) return NullArgument("passed");
  return Guard([&]() -> absl::Status {
    labeldp::CheckOptions options;
    options.inject_recursion_fault = inject_recursion_fault != 0;
    if (golden_dir != nullptr) options.golden_dir = golden_dir;
    const labeldp::CheckReport report = labeldp::RunChecks(options);
    *passed = report.AllPassed();
    if (json != nullptr) *json = NewText(labeldp::CheckReportJson(report));
    return absl::OkStatus();
  });
}

}  // extern "C"
