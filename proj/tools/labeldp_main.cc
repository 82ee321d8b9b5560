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

// Command-line front end for the labeldp library.
//
// Exit codes: 0 success, 1 check failure, 2 input error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "labeldp/labeldp.h"
#include "nlohmann/json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct TextDeleter {
  void operator()(ldp_text* text) const { ldp_text_free(text); }
};
struct LabelsDeleter {
  void operator()(ldp_labels* labels) const { ldp_labels_free(labels); }
};
using Text = std::unique_ptr<ldp_text, TextDeleter>;
using Labels = std::unique_ptr<ldp_labels, LabelsDeleter>;

std::string TakeText(ldp_text* raw) {
  Text text(raw);
  return std::string(ldp_text_data(text.get()), ldp_text_size(text.get()));
}

// Maps a failed library call to an exit code, printing the error.
int Fail(ldp_status status) {
  std::fprintf(stderr, "error: %s\n", ldp_last_error());
  return status == LDP_INTERNAL ? kExitCheckFailed : kExitInputError;
}

bool WriteFile(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << data;
  out.close();
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", path.string().c_str());
    return false;
  }
  return true;
}

uint64_t ResolveSeed(const std::optional<uint64_t>& seed, const char* command) {
  if (seed.has_value()) return *seed;
  std::fprintf(stderr, "warning: %s without --seed; using seed 0\n", command);
  return 0;
}

std::string FormatDouble(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  return buffer;
}

// privatize / rr

struct ReleaseOptions {
  std::string in;
  std::string out;
  double epsilon = 0.0;
  double delta = 1.0;
  std::optional<uint64_t> seed;
};

void AddReleaseOptions(CLI::App* command, ReleaseOptions* options) {
  command->add_option("--in", options->in, "Input labels CSV (id,label)")
      ->required()
      ->check(CLI::ExistingFile);
  command->add_option("--epsilon", options->epsilon, "Privacy budget")
      ->required();
  command->add_option("--delta", options->delta, "Global sensitivity")
      ->capture_default_str();
  command->add_option("--seed", options->seed, "Master seed");
  command->add_option("--out", options->out, "Output directory")->required();
}

int RunRelease(const ReleaseOptions& options, bool exponential) {
  const uint64_t seed =
      ResolveSeed(options.seed, exponential ? "privatize" : "rr");
  ldp_labels* raw_input = nullptr;
  ldp_status status = ldp_labels_read_csv(options.in.c_str(), &raw_input);
  if (status != LDP_OK) return Fail(status);
  Labels input(raw_input);

  ldp_labels* raw_output = nullptr;
  std::string sidecar;
  if (exponential) {
    ldp_em_record record;
    status = ldp_privatize(input.get(), options.epsilon, options.delta, seed,
                           &raw_output, &record);
    if (status != LDP_OK) return Fail(status);
    ldp_text* json = nullptr;
    status = ldp_em_record_json(&record, &json);
    if (status != LDP_OK) {
      ldp_labels_free(raw_output);
      return Fail(status);
    }
    sidecar = TakeText(json);
  } else {
    int64_t flips = 0;
    status = ldp_randomized_response(input.get(), options.epsilon,
                                     options.delta, seed, &raw_output, &flips);
    if (status != LDP_OK) return Fail(status);
    double p = 0.0;
    ldp_flip_probability(options.epsilon, options.delta, &p);
    nlohmann::ordered_json record;
    record["mechanism"] = "rr";
    record["epsilon"] = options.epsilon;
    record["delta"] = options.delta;
    record["seed"] = seed;
    record["n"] = static_cast<int64_t>(ldp_labels_size(input.get()));
    record["flip_probability"] = p;
    record["flip_count"] = flips;
    sidecar = record.dump(2) + "\n";
  }
  Labels output(raw_output);

  std::error_code error;
  std::filesystem::create_directories(options.out, error);
  if (error) {
    std::fprintf(stderr, "error: cannot create %s: %s\n", options.out.c_str(),
                 error.message().c_str());
    return kExitInputError;
  }
  const std::filesystem::path dir(options.out);
  const std::string stem = exponential ? "privatized" : "rr";
  status = ldp_labels_write_csv(output.get(), (dir / (stem + ".csv")).c_str());
  if (status != LDP_OK) return Fail(status);
  if (!WriteFile(dir / (stem + ".json"), sidecar)) return kExitInputError;
  std::fputs(sidecar.c_str(), stdout);
  return kExitOk;
}

// budget

struct BudgetOptions {
  int64_t n = 0;
  double flip_fraction = 0.5;
  double confidence = 0.999;
  double delta = 1.0;
  bool half_flip = false;
};

int RunBudget(const BudgetOptions& options) {
  int applicable = 0;
  double epsilon = 0.0;
  ldp_status status;
  if (options.half_flip) {
    status =
        ldp_half_flip_budget(options.n, options.delta, &applicable, &epsilon);
  } else {
    status =
        ldp_min_budget(options.n, options.flip_fraction, options.confidence,
                       options.delta, &applicable, &epsilon);
  }
  if (status != LDP_OK) return Fail(status);
  if (!applicable) {
    std::puts("NOT_APPLICABLE");
    return kExitOk;
  }
  double exact = 0.0;
  double hoeffding = 0.0;
  status = ldp_success_for_budget(
      options.n, epsilon, options.delta,
      options.half_flip ? 0.5 : options.flip_fraction, &exact, &hoeffding);
  if (status != LDP_OK) return Fail(status);
  std::printf("epsilon_min %s\n", FormatDouble("%.6f", epsilon).c_str());
  std::printf("success_exact %s\n", FormatDouble("%.6f", exact).c_str());
  std::printf("success_hoeffding %s\n",
              FormatDouble("%.6f", hoeffding).c_str());
  return kExitOk;
}

// tables

struct TablesOptions {
  std::optional<double> confidence;
  std::optional<double> confidence_raw;
  double delta = 1.0;
  bool csv = false;
  bool json = false;
  bool check = false;
  std::string golden;
  std::string out;
};

int RunTables(const TablesOptions& options) {
  double confidence = 0.999;
  if (options.confidence_raw.has_value()) {
    confidence = *options.confidence_raw;
  } else if (options.confidence.has_value()) {
    confidence = *options.confidence;
    if (confidence != 0.999 && confidence != 0.95) {
      std::fprintf(stderr,
                   "error: --confidence must be 0.999 or 0.95; use "
                   "--confidence-raw for other levels\n");
      return kExitInputError;
    }
  }
  if (options.check) {
    int matches = 0;
    ldp_text* report = nullptr;
    const ldp_status status = ldp_budget_table_check(
        confidence, options.golden.empty() ? nullptr : options.golden.c_str(),
        &matches, &report);
    if (status != LDP_OK) return Fail(status);
    const std::string text = TakeText(report);
    std::fputs(text.c_str(), matches ? stdout : stderr);
    std::puts(matches ? "table check: OK" : "table check: MISMATCH");
    return matches ? kExitOk : kExitCheckFailed;
  }
  const ldp_table_format format = options.json  ? LDP_TABLE_JSON
                                  : options.csv ? LDP_TABLE_CSV
                                                : LDP_TABLE_TEXT;
  ldp_text* table = nullptr;
  const ldp_status status =
      ldp_budget_table(confidence, options.delta, format, &table);
  if (status != LDP_OK) return Fail(status);
  const std::string text = TakeText(table);
  if (!options.out.empty()) {
    return WriteFile(options.out, text) ? kExitOk : kExitInputError;
  }
  std::fputs(text.c_str(), stdout);
  return kExitOk;
}

// success

struct SuccessOptions {
  int64_t n = 0;
  double epsilon = 0.0;
  double delta = 1.0;
  std::optional<double> flip_fraction;
};

int RunSuccess(const SuccessOptions& options) {
  double p = 0.0;
  ldp_status status = ldp_flip_probability(options.epsilon, options.delta, &p);
  if (status != LDP_OK) return Fail(status);
  std::printf("flip_probability %s\n", FormatDouble("%.6f", p).c_str());
  if (!options.flip_fraction.has_value()) {
    double success = 0.0;
    status = ldp_success_probability(options.n, options.epsilon, options.delta,
                                     &success);
    if (status != LDP_OK) return Fail(status);
    std::printf("success_exact %s\n", FormatDouble("%.9f", success).c_str());
    return kExitOk;
  }
  double exact = 0.0;
  double hoeffding = 0.0;
  status = ldp_success_for_budget(options.n, options.epsilon, options.delta,
                                  *options.flip_fraction, &exact, &hoeffding);
  if (status != LDP_OK) return Fail(status);
  std::printf("success_exact %s\n", FormatDouble("%.9f", exact).c_str());
  std::printf("success_hoeffding %s\n",
              FormatDouble("%.9f", hoeffding).c_str());
  return kExitOk;
}

// scan

struct ScanOptions {
  int property = 1;
  int64_t n_min = 5;
  int64_t n_max = 200;
  std::vector<double> p_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<int64_t> offsets;
  std::vector<int64_t> n_list = {100, 500, 1000, 2000, 5000};
  double window = 0.05;
};

int RunScan(const ScanOptions& options) {
  if (options.property == 5) {
    ldp_text* csv = nullptr;
    const ldp_status status = ldp_half_point_series(
        options.n_min, options.n_max, options.p_values.data(),
        options.p_values.size(), &csv);
    if (status != LDP_OK) return Fail(status);
    std::fputs(TakeText(csv).c_str(), stdout);
    return kExitOk;
  }
  if (options.property == 6) {
    std::puts("n,p,window,mass");
    for (double p : options.p_values) {
      for (int64_t n : options.n_list) {
        double mass = 0.0;
        const ldp_status status =
            ldp_concentration(n, p, options.window, &mass);
        if (status != LDP_OK) return Fail(status);
        std::printf("%lld,%s,%s,%s\n", static_cast<long long>(n),
                    FormatDouble("%g", p).c_str(),
                    FormatDouble("%g", options.window).c_str(),
                    FormatDouble("%.12f", mass).c_str());
      }
    }
    return kExitOk;
  }
  std::vector<int64_t> offsets = options.offsets;
  if (offsets.empty()) {
    offsets = options.property == 3
                  ? std::vector<int64_t>{-3, -2, -1, 0, 1, 2, 3}
                  : std::vector<int64_t>{0, 1, 2, 3, 5, 10};
  }
  int held = 0;
  ldp_text* json = nullptr;
  const ldp_status status = ldp_scan(
      options.property, options.n_min, options.n_max, options.p_values.data(),
      options.p_values.size(), offsets.data(), offsets.size(), &held, &json);
  if (status != LDP_OK) return Fail(status);
  std::fputs(TakeText(json).c_str(), stdout);
  return held ? kExitOk : kExitCheckFailed;
}

// degrade

struct DegradeOptions {
  double epsilon = 0.0;
  double delta = 1.0;
  std::vector<int64_t> n_list = {100, 1000, 10000};
  int bins = 50;
  double window = 0.05;
};

int RunDegrade(const DegradeOptions& options) {
  ldp_text* csv = nullptr;
  const ldp_status status =
      ldp_degrade(options.epsilon, options.delta, options.n_list.data(),
                  options.n_list.size(), options.bins, options.window, &csv);
  if (status != LDP_OK) return Fail(status);
  std::fputs(TakeText(csv).c_str(), stdout);
  return kExitOk;
}

// experiment

struct ExperimentOptions {
  std::vector<double> epsilons;
  std::vector<std::string> losses;
  std::vector<int64_t> n_list;
  std::string mechanism = "em";
  std::string architecture = "linear";
  std::string objective = "ber";
  bool unstratified = false;
  std::optional<uint64_t> seed;
  std::string format = "table";
  std::string out;
};

int RunExperiment(ExperimentOptions& options, ldp_experiment_config config) {
  config.master_seed = ResolveSeed(options.seed, "experiment");
  config.epsilons = options.epsilons.data();
  config.epsilon_count = options.epsilons.size();
  std::vector<const char*> losses;
  for (const std::string& loss : options.losses) losses.push_back(loss.c_str());
  config.losses = losses.data();
  config.loss_count = losses.size();
  config.n_values = options.n_list.data();
  config.n_count = options.n_list.size();
  config.mechanism =
      options.mechanism == "rr" ? LDP_MECHANISM_RR : LDP_MECHANISM_EM;
  config.architecture = options.architecture == "mlp" ? LDP_ARCHITECTURE_MLP
                                                      : LDP_ARCHITECTURE_LINEAR;
  config.objective =
      options.objective == "auc" ? LDP_OBJECTIVE_AUC : LDP_OBJECTIVE_BER;
  config.stratified = options.unstratified ? 0 : 1;

  ldp_text* csv = nullptr;
  ldp_text* table = nullptr;
  const ldp_status status = ldp_experiment_run(&config, &csv, &table);
  if (status != LDP_OK) return Fail(status);
  const std::string csv_text = TakeText(csv);
  const std::string table_text = TakeText(table);
  if (!options.out.empty() && !WriteFile(options.out, csv_text)) {
    return kExitInputError;
  }
  std::fputs(options.format == "csv" ? csv_text.c_str() : table_text.c_str(),
             stdout);
  return kExitOk;
}

// check

struct CheckOptions {
  std::string inject_fault;
  std::string golden_dir;
  bool json = false;
};

int RunCheck(const CheckOptions& options) {
  int passed = 0;
  ldp_text* raw = nullptr;
  const ldp_status status = ldp_check_run(
      options.inject_fault == "recursion",
      options.golden_dir.empty() ? nullptr : options.golden_dir.c_str(),
      &passed, &raw);
  if (status != LDP_OK) return Fail(status);
  const std::string text = TakeText(raw);
  if (options.json) {
    std::fputs(text.c_str(), stdout);
  } else {
    const nlohmann::json report = nlohmann::json::parse(text);
    for (const auto& check : report.at("checks")) {
      std::printf("%-4s %-20s %s\n",
                  check.at("passed").get<bool>() ? "PASS" : "FAIL",
                  check.at("id").get<std::string>().c_str(),
                  check.at("detail").get<std::string>().c_str());
    }
  }
  if (!passed) {
    const nlohmann::json report = nlohmann::json::parse(text);
    std::string failed;
    for (const auto& id : report.at("failed")) {
      if (!failed.empty()) failed += ",";
      failed += id.get<std::string>();
    }
    std::fprintf(stderr, "check failed: %s\n", failed.c_str());
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Label differential privacy via the exponential mechanism",
               "labeldp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ldp_version()));

  ReleaseOptions privatize_options;
  CLI::App* privatize =
      app.add_subcommand("privatize", "Release labels with the two-step EM");
  AddReleaseOptions(privatize, &privatize_options);

  ReleaseOptions rr_options;
  CLI::App* rr = app.add_subcommand(
      "rr", "Release labels with independent randomized response");
  AddReleaseOptions(rr, &rr_options);

  BudgetOptions budget_options;
  CLI::App* budget =
      app.add_subcommand("budget", "Minimum budget for one (n, phi) pair");
  budget->add_option("--n", budget_options.n, "Number of labels")->required();
  budget
      ->add_option("--phi", budget_options.flip_fraction,
                   "Tolerated flip fraction in (0, 1)")
      ->capture_default_str();
  budget
      ->add_option("--confidence", budget_options.confidence,
                   "Target success probability")
      ->capture_default_str();
  budget->add_option("--delta", budget_options.delta, "Global sensitivity")
      ->capture_default_str();
  budget->add_flag("--half-flip", budget_options.half_flip,
                   "Closed-form budget for a half-flip tolerance at 99.9%");

  TablesOptions tables_options;
  CLI::App* tables = app.add_subcommand("tables", "Minimum-budget tables");
  CLI::Option* confidence = tables->add_option(
      "--confidence", tables_options.confidence, "0.999 or 0.95");
  tables
      ->add_option("--confidence-raw", tables_options.confidence_raw,
                   "Any confidence level in (0, 1)")
      ->excludes(confidence);
  tables->add_option("--delta", tables_options.delta, "Global sensitivity")
      ->capture_default_str();
  CLI::Option* csv_flag =
      tables->add_flag("--csv", tables_options.csv, "Emit CSV");
  tables->add_flag("--json", tables_options.json, "Emit JSON")
      ->excludes(csv_flag);
  tables->add_flag("--check", tables_options.check,
                   "Diff against the golden table");
  tables
      ->add_option("--golden", tables_options.golden,
                   "Golden CSV to diff against instead of the embedded one")
      ->check(CLI::ExistingFile);
  tables->add_option("--out", tables_options.out, "Write to this file");

  SuccessOptions success_options;
  CLI::App* success =
      app.add_subcommand("success", "Success probability at a given budget");
  success->add_option("--n", success_options.n, "Number of labels")->required();
  success->add_option("--epsilon", success_options.epsilon, "Privacy budget")
      ->required();
  success->add_option("--delta", success_options.delta, "Global sensitivity")
      ->capture_default_str();
  success->add_option("--phi", success_options.flip_fraction,
                      "Tolerated flip fraction (default: at most n/2 flips)");

  ScanOptions scan_options;
  CLI::App* scan =
      app.add_subcommand("scan", "Truncated-binomial property scans");
  scan->add_option("--property", scan_options.property, "Property 1-6")
      ->required()
      ->check(CLI::Range(1, 6));
  scan->add_option("--n-min", scan_options.n_min)->capture_default_str();
  scan->add_option("--n-max", scan_options.n_max)->capture_default_str();
  scan->add_option("--p-list", scan_options.p_values)->delimiter(',');
  scan->add_option("--offsets", scan_options.offsets,
                   "Fixed j (1), fixed k (2) or offsets (3)")
      ->delimiter(',');
  scan->add_option("--n-list", scan_options.n_list, "Sizes for property 6")
      ->delimiter(',');
  scan->add_option("--window", scan_options.window, "Property 6 window")
      ->capture_default_str();

  DegradeOptions degrade_options;
  CLI::App* degrade = app.add_subcommand(
      "degrade", "Score distributions as flip-rate histograms");
  degrade->add_option("--epsilon", degrade_options.epsilon, "Privacy budget")
      ->required();
  degrade->add_option("--delta", degrade_options.delta, "Global sensitivity")
      ->capture_default_str();
  degrade->add_option("--n-list", degrade_options.n_list)
      ->delimiter(',')
      ->capture_default_str();
  degrade->add_option("--bins", degrade_options.bins)->capture_default_str();
  degrade
      ->add_option("--window", degrade_options.window,
                   "Half-width of the concentration window")
      ->capture_default_str();

  ExperimentOptions experiment_options;
  ldp_experiment_config config;
  ldp_experiment_config_init(&config);
  CLI::App* experiment =
      app.add_subcommand("experiment", "Synthetic learning-robustness grid");
  experiment->add_option("--epsilons", experiment_options.epsilons)
      ->delimiter(',');
  experiment->add_option("--loss", experiment_options.losses,
                         "Loss spec; repeat for several (default: all)");
  experiment->add_option("--n-list", experiment_options.n_list)->delimiter(',');
  experiment->add_option("--repetitions", config.repetitions)
      ->capture_default_str();
  experiment->add_option("--mechanism", experiment_options.mechanism)
      ->check(CLI::IsMember({"em", "rr"}))
      ->capture_default_str();
  experiment->add_option("--delta", config.delta, "Global sensitivity")
      ->capture_default_str();
  experiment->add_option("--dimension", config.dimension)
      ->capture_default_str();
  experiment->add_option("--separation", config.mean_separation)
      ->capture_default_str();
  experiment->add_option("--covariance-scale", config.covariance_scale)
      ->capture_default_str();
  experiment->add_option("--positive-fraction", config.positive_fraction)
      ->capture_default_str();
  experiment->add_flag("--unstratified", experiment_options.unstratified,
                       "Draw labels independently instead of by quota");
  experiment->add_option("--test-size", config.test_size)
      ->capture_default_str();
  experiment->add_option("--architecture", experiment_options.architecture)
      ->check(CLI::IsMember({"linear", "mlp"}))
      ->capture_default_str();
  experiment->add_option("--objective", experiment_options.objective)
      ->check(CLI::IsMember({"ber", "auc"}))
      ->capture_default_str();
  experiment->add_option("--learning-rate", config.learning_rate)
      ->capture_default_str();
  experiment->add_option("--epochs", config.epochs)->capture_default_str();
  experiment
      ->add_option("--batch-per-class", config.batch_per_class,
                   "0 means full batch")
      ->capture_default_str();
  experiment->add_option("--pairs-per-step", config.pairs_per_step)
      ->capture_default_str();
  experiment->add_option("--seed", experiment_options.seed, "Master seed");
  experiment->add_option("--threads", config.threads)->capture_default_str();
  experiment->add_option("--format", experiment_options.format)
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();
  experiment->add_option("--out", experiment_options.out,
                         "Also write the CSV to this file");

  CheckOptions check_options;
  CLI::App* check = app.add_subcommand("check", "Run the invariant suite");
  check
      ->add_option("--inject-fault", check_options.inject_fault,
                   "Perturb a component to validate the suite")
      ->check(CLI::IsMember({"recursion"}));
  check
      ->add_option("--golden-dir", check_options.golden_dir,
                   "Directory holding table_999.csv and table_95.csv")
      ->check(CLI::ExistingDirectory);
  check->add_flag("--json", check_options.json, "Print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (privatize->parsed()) return RunRelease(privatize_options, true);
  if (rr->parsed()) return RunRelease(rr_options, false);
  if (budget->parsed()) return RunBudget(budget_options);
  if (tables->parsed()) return RunTables(tables_options);
  if (success->parsed()) return RunSuccess(success_options);
  if (scan->parsed()) return RunScan(scan_options);
  if (degrade->parsed()) return RunDegrade(degrade_options);
  if (experiment->parsed()) return RunExperiment(experiment_options, config);
  if (check->parsed()) return RunCheck(check_options);
  return kExitInputError;
}
