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

// C interface to the label differential privacy toolkit.
//
// Every function returns an ldp_status. On failure, ldp_last_error() holds a
// message for the calling thread until its next failing call. Objects
// returned through out-parameters are owned by the caller and released with
// the matching *_free function.

#ifndef LABELDP_LABELDP_H_
#define LABELDP_LABELDP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(LABELDP_BUILDING_LIBRARY)
#define LDP_API __attribute__((visibility("default")))
#else
#define LDP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ldp_status {
  LDP_OK = 0,
  LDP_INVALID_ARGUMENT = 1,
  LDP_OUT_OF_RANGE = 2,
  LDP_FAILED_PRECONDITION = 3,
  // Malformed input data, such as a bad label file.
  LDP_DATA_LOSS = 4,
  LDP_NOT_FOUND = 5,
  LDP_INTERNAL = 6,
} ldp_status;

LDP_API const char* ldp_last_error(void);
LDP_API const char* ldp_version(void);

// ---------------------------------------------------------------------------
// Text buffers

typedef struct ldp_text ldp_text;

LDP_API const char* ldp_text_data(const ldp_text* text);
LDP_API size_t ldp_text_size(const ldp_text* text);
LDP_API void ldp_text_free(ldp_text* text);

// ---------------------------------------------------------------------------
// Label vectors

// Labels in {-1, +1} with string ids.
typedef struct ldp_labels ldp_labels;

// Ids default to "1", "2", ..., "n".
LDP_API ldp_status ldp_labels_create(const int8_t* values, size_t n,
                                     ldp_labels** out);
// CSV with header `id,label`. Malformed files yield LDP_DATA_LOSS with the
// line number in the error message.
LDP_API ldp_status ldp_labels_read_csv(const char* path, ldp_labels** out);
LDP_API ldp_status ldp_labels_parse_csv(const char* text, size_t size,
                                        ldp_labels** out);
LDP_API ldp_status ldp_labels_write_csv(const ldp_labels* labels,
                                        const char* path);
LDP_API ldp_status ldp_labels_format_csv(const ldp_labels* labels,
                                         ldp_text** out);
LDP_API size_t ldp_labels_size(const ldp_labels* labels);
// Copies min(n, capacity) labels into `out`.
LDP_API ldp_status ldp_labels_values(const ldp_labels* labels, int8_t* out,
                                     size_t capacity);
LDP_API int64_t ldp_labels_hamming(const ldp_labels* a, const ldp_labels* b);
LDP_API void ldp_labels_free(ldp_labels* labels);

// ---------------------------------------------------------------------------
// Mechanisms

typedef struct ldp_em_record {
  double epsilon;
  double delta;
  uint64_t seed;
  int64_t n;
  // Realized Hamming score q and flip count n - q.
  int64_t score;
  int64_t flip_count;
} ldp_em_record;

// Two-step exponential mechanism. `epsilon` must be positive and finite;
// `delta` is the global sensitivity. The output keeps the input ids.
LDP_API ldp_status ldp_privatize(const ldp_labels* input, double epsilon,
                                 double delta, uint64_t seed,
                                 ldp_labels** output, ldp_em_record* record);
// {epsilon, delta, seed, n, q, flip_count}
LDP_API ldp_status ldp_em_record_json(const ldp_em_record* record,
                                      ldp_text** out);

// Independent flips at p = 1 / (1 + exp(epsilon / (2 delta))).
LDP_API ldp_status ldp_randomized_response(const ldp_labels* input,
                                           double epsilon, double delta,
                                           uint64_t seed, ldp_labels** output,
                                           int64_t* flip_count);

LDP_API ldp_status ldp_flip_probability(double epsilon, double delta,
                                        double* p);

// Writes log Pr(q) for q = 0..n into `log_probs` (n + 1 entries).
LDP_API ldp_status ldp_score_distribution(int64_t n, double epsilon,
                                          double delta, double* log_probs);

// ---------------------------------------------------------------------------
// Truncated binomial

// Pr[lower <= Binomial(n, p) <= upper].
LDP_API ldp_status ldp_trunc_binom(int64_t n, int64_t lower, int64_t upper,
                                   double p, double* out);
// Pr[Binomial(n, p) <= j].
LDP_API ldp_status ldp_upper_trunc(int64_t n, int64_t j, double p, double* out);
// Probability that at most floor(n / 2) labels flip.
LDP_API ldp_status ldp_success_probability(int64_t n, double epsilon,
                                           double delta, double* out);
LDP_API ldp_status ldp_hoeffding_lower_bound(int64_t n, double j, double p,
                                             double* out);
LDP_API ldp_status ldp_normal_approx(int64_t n, int64_t lower, int64_t upper,
                                     double p, int continuity_correction,
                                     double* out);
LDP_API ldp_status ldp_concentration(int64_t n, double p, double window,
                                     double* out);
LDP_API ldp_status ldp_interchange_point(int64_t n0, int64_t k, double p,
                                         int64_t cap, int64_t* interchange,
                                         int* cap_exceeded);

// Monotonicity scan of property 1-4 over n in [n_min, n_max]. Writes a JSON
// report and sets *held to 1 when no violation was found.
LDP_API ldp_status ldp_scan(int property_id, int64_t n_min, int64_t n_max,
                            const double* p_values, size_t p_count,
                            const int64_t* offsets, size_t offset_count,
                            int* held, ldp_text** json);
// S(n, ceil(n/2)) series as `x,series,value` CSV.
LDP_API ldp_status ldp_half_point_series(int64_t n_min, int64_t n_max,
                                         const double* p_values, size_t p_count,
                                         ldp_text** csv);
// Flip-rate histograms `n,flip_rate_bin,probability` for each n.
LDP_API ldp_status ldp_degrade(double epsilon, double delta,
                               const int64_t* n_values, size_t n_count,
                               int bins, double window, ldp_text** csv);

// ---------------------------------------------------------------------------
// Budgets

LDP_API ldp_status ldp_min_budget(int64_t n, double flip_fraction,
                                  double confidence, double delta,
                                  int* applicable, double* epsilon);
LDP_API ldp_status ldp_half_flip_budget(int64_t n, double delta,
                                        int* applicable, double* epsilon);
LDP_API ldp_status ldp_success_for_budget(int64_t n, double epsilon,
                                          double delta, double flip_fraction,
                                          double* exact, double* hoeffding);

typedef enum ldp_table_format {
  LDP_TABLE_TEXT = 0,
  LDP_TABLE_CSV = 1,
  LDP_TABLE_JSON = 2,
} ldp_table_format;

// Minimum-budget table over n in {1e2, ..., 1e6} and flip tolerances
// 50%, 45%, ..., 5%.
LDP_API ldp_status ldp_budget_table(double confidence, double delta,
                                    ldp_table_format format, ldp_text** out);

// Compares the table for `confidence` with a golden CSV: the file at
// `golden_path`, or the embedded copy when it is NULL (available for 0.999
// and 0.95 only). Sets *matches and writes a one-line-per-mismatch report.
LDP_API ldp_status ldp_budget_table_check(double confidence,
                                          const char* golden_path, int* matches,
                                          ldp_text** report);

// ---------------------------------------------------------------------------
// Losses

// `loss` uses the textual form, e.g. "hinge" or "barrier:b=200,r=50".
LDP_API ldp_status ldp_loss_value(const char* loss, double z, double* out);
// Fails with LDP_FAILED_PRECONDITION for the 0-1 loss.
LDP_API ldp_status ldp_loss_grad(const char* loss, double z, double* out);

// ---------------------------------------------------------------------------
// Experiments

typedef enum ldp_mechanism {
  LDP_MECHANISM_EM = 0,
  LDP_MECHANISM_RR = 1,
} ldp_mechanism;
typedef enum ldp_objective {
  LDP_OBJECTIVE_BER = 0,
  LDP_OBJECTIVE_AUC = 1,
} ldp_objective;
typedef enum ldp_architecture {
  LDP_ARCHITECTURE_LINEAR = 0,
  LDP_ARCHITECTURE_MLP = 1,
} ldp_architecture;

// List fields left NULL (count 0) take their defaults: epsilons
// {0.1, 0.5, 1, 1.5, 3, 5, 7}, the seven trainable losses, n = 1000.
typedef struct ldp_experiment_config {
  const double* epsilons;
  size_t epsilon_count;
  const char* const* losses;
  size_t loss_count;
  const int64_t* n_values;
  size_t n_count;
  int repetitions;
  ldp_mechanism mechanism;
  double delta;
  int dimension;
  double mean_separation;
  double covariance_scale;
  double positive_fraction;
  int stratified;
  int64_t test_size;
  ldp_architecture architecture;
  ldp_objective objective;
  double learning_rate;
  int epochs;
  int batch_per_class;
  int pairs_per_step;
  uint64_t master_seed;
  int threads;
} ldp_experiment_config;

LDP_API void ldp_experiment_config_init(ldp_experiment_config* config);

// Runs the grid. Either output may be NULL. `csv` receives
// epsilon,loss,n,metric,mean,std rows and `table` the mean(std) layout.
LDP_API ldp_status ldp_experiment_run(const ldp_experiment_config* config,
                                      ldp_text** csv, ldp_text** table);

// ---------------------------------------------------------------------------
// Invariant suite

// Runs every check. `inject_recursion_fault` perturbs the score recursion;
// `golden_dir` (may be NULL) overrides the embedded golden tables with
// <dir>/table_999.csv and <dir>/table_95.csv.
LDP_API ldp_status ldp_check_run(int inject_recursion_fault,
                                 const char* golden_dir, int* passed,
                                 ldp_text** json);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // LABELDP_LABELDP_H_
