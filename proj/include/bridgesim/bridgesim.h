/* Copyright 2026 The bridgesim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the bridgesim library.
 *
 * Every fallible call returns a bs_status; on failure a message is available
 * from bs_last_error() on the calling thread until its next failing call.
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_free function (NULL is accepted). Strings returned through
 * char** out-parameters are released with bs_free_string. Handles may be
 * used from several threads as long as each handle is used by one thread at
 * a time. */

#ifndef BRIDGESIM_BRIDGESIM_H_
#define BRIDGESIM_BRIDGESIM_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(BRIDGESIM_BUILDING)
#define BS_API __declspec(dllexport)
#else
#define BS_API __declspec(dllimport)
#endif
#else
#define BS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bs_status {
  BS_OK = 0,
  BS_ERR_INVALID_ARGUMENT = 1,
  BS_ERR_CONFIG = 2,
  BS_ERR_NUMERICAL = 3,
  BS_ERR_IO = 4,
  BS_ERR_INTERNAL = 5
} bs_status;

typedef enum bs_variant { BS_CONVEXIFIED = 0, BS_RIGID = 1 } bs_variant;

typedef struct bs_config bs_config;
typedef struct bs_model bs_model;
typedef struct bs_run bs_run;
typedef struct bs_table bs_table;

BS_API const char* bs_version(void);
BS_API const char* bs_last_error(void);
BS_API const char* bs_status_name(bs_status status);
BS_API void bs_free_string(char* s);
/* BRIDGESIM_WORKERS when set to a positive integer, else the number of
 * hardware threads. */
BS_API size_t bs_default_workers(void);

/* ---- configuration ---------------------------------------------------- */

BS_API bs_status bs_config_default(bs_config** out);
/* `path` may be NULL for the defaults. Each override is "dotted.key=value";
 * the value is read as JSON when it parses and as a string otherwise. */
BS_API bs_status bs_config_load(const char* path, const char* const* overrides,
                                size_t n_overrides, bs_config** out);
BS_API bs_status bs_config_from_json(const char* text, bs_config** out);
/* Applies one override; the configuration is left unchanged on failure. */
BS_API bs_status bs_config_set(bs_config* cfg, const char* assignment);
BS_API bs_status bs_config_to_json(const bs_config* cfg, char** out);
BS_API void bs_config_free(bs_config* cfg);

/* ---- model ------------------------------------------------------------ */

BS_API bs_status bs_model_create(const bs_config* cfg, bs_variant variant,
                                 bs_model** out);
BS_API bs_status bs_model_sizes(const bs_model* m, size_t* n_w, size_t* n_theta);
/* Modal accelerations at modal coefficients (w: n_w values, theta: n_theta). */
BS_API bs_status bs_model_accelerations(bs_model* m, const double* w,
                                        const double* theta, double* w_acc,
                                        double* theta_acc);
BS_API bs_status bs_model_energy(bs_model* m, const double* w, const double* theta,
                                 const double* w_vel, const double* theta_vel,
                                 double* energy);
BS_API void bs_model_free(bs_model* m);

/* ---- single runs ------------------------------------------------------ */

typedef struct bs_run_summary {
  size_t n_w;
  size_t n_theta;
  double energy0;
  double energy_drift;
  double mean_slack_alpha;
  double mean_slack_beta;
  double mean_slackening;
  double t_end;
  size_t steps;
  size_t samples;
  size_t dominant_torsional_mode; /* 1-based */
  int stopped_early;
  int unstable; /* detector verdict for the configured experiment */
} bs_run_summary;

/* Runs the configured experiment over the full horizon. */
BS_API bs_status bs_simulate(const bs_config* cfg, bs_run** out);
BS_API bs_status bs_run_get_summary(const bs_run* run, bs_run_summary* out);
/* Copies min(n, n_w) / min(n, n_theta) values. */
BS_API bs_status bs_run_max_abs_w_bar(const bs_run* run, double* out, size_t n);
BS_API bs_status bs_run_max_abs_theta_bar(const bs_run* run, double* out, size_t n);
BS_API size_t bs_run_sample_count(const bs_run* run);
/* Any output pointer may be NULL. */
BS_API bs_status bs_run_sample(const bs_run* run, size_t i, double* t, double* w_bar,
                               double* theta_bar, double* energy,
                               double* slack_alpha, double* slack_beta);
BS_API bs_status bs_run_write_csv(const bs_run* run, const char* path);
BS_API bs_status bs_run_summary_json(const bs_run* run, char** out);
BS_API bs_status bs_run_write_summary_json(const bs_run* run, const char* path);
BS_API void bs_run_free(bs_run* run);

/* ---- threshold searches ------------------------------------------------ */

typedef struct bs_threshold {
  size_t mode;
  bs_variant variant;
  int found;
  double threshold;
  double lo;
  double hi;
  double energy0;
  double mean_slackening;
  double energy_drift;
  size_t dominant_torsional_mode;
  size_t probes;
  int bracket_verified;
  int non_monotone;
  int unstable_at_start;
  const char* error; /* empty when the search succeeded; owned by the table */
} bs_threshold;

typedef void (*bs_threshold_callback)(const bs_threshold* result, void* user);

/* Threshold search for every (mode, variant) pair. NULL `modes` or
 * `variants` take the configured sweep lists; workers == 0 means
 * bs_default_workers(). The callback, if any, is invoked once per finished
 * pair, serialized. */
BS_API bs_status bs_sweep_run(const bs_config* cfg, const size_t* modes, size_t n_modes,
                              const bs_variant* variants, size_t n_variants,
                              size_t workers, bs_threshold_callback on_done,
                              void* user, bs_table** out);
BS_API size_t bs_table_count(const bs_table* table);
BS_API bs_status bs_table_get(const bs_table* table, size_t i, bs_threshold* out);
BS_API bs_status bs_table_write_csv(const bs_table* table, const char* path);
BS_API bs_status bs_table_write_comparison_csv(const bs_table* table, const char* path);
BS_API bs_status bs_table_to_json(const bs_table* table, char** out);
BS_API void bs_table_free(bs_table* table);

/* ---- verification ----------------------------------------------------- */

typedef struct bs_check {
  const char* name;
  int passed;
  size_t cases;
  double worst; /* largest observed value/limit ratio */
  const char* detail;
} bs_check;

typedef void (*bs_check_callback)(const bs_check* check, void* user);

/* Runs the property suites with the configured seed and case count. `json`
 * may be NULL; otherwise it receives the list of results. */
BS_API bs_status bs_validate(const bs_config* cfg, bs_check_callback on_check,
                             void* user, int* all_passed, char** json);

typedef struct bs_flat_envelope_report {
  double zeta_root;
  double tangency_residual;
  double zeta_envelope;
  double right_limit;
  double left_limit;
  double concave_majorant_integral;
} bs_flat_envelope_report;

/* Bump perturbation of an affine function on (-2, 2): tangency point and
 * one-sided directional quotients of the convexified integral. */
BS_API bs_status bs_flat_envelope_example(size_t cells, bs_flat_envelope_report* out);

#ifdef __cplusplus
}
#endif

#endif /* BRIDGESIM_BRIDGESIM_H_ */
