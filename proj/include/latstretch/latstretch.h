/*
   Copyright 2026 The latstretch Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef LATSTRETCH_LATSTRETCH_H
#define LATSTRETCH_LATSTRETCH_H

/*
 * C interface to latstretch: exact lattice-point counts in stretched model
 * domains { x : x_1^w_1 + ... + x_d^w_d <= 1 }, their closed-form measures and
 * two-term asymptotics, and the search for optimal volume-preserving stretches.
 *
 * Every fallible call returns an ls_status; on failure ls_last_error() holds a
 * message for the calling thread. Objects are opaque handles released with
 * the matching *_destroy function. Stretch factors are arrays of length d.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define LS_API __declspec(dllexport)
#else
#  define LS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ls_status {
    LS_OK = 0,
    LS_ERR_INVALID_ARGUMENT = 1,
    LS_ERR_GUARD = 2,
    LS_ERR_OVERFLOW = 3,
    LS_ERR_IO = 4,
    LS_ERR_INTERNAL = 5
} ls_status;

typedef enum ls_region {
    LS_REGION_FULL = 0,
    LS_REGION_POSITIVE = 1,
    LS_REGION_NONNEGATIVE = 2,
    LS_REGION_HYPERPLANE_UNION = 3
} ls_region;

typedef enum ls_objective {
    LS_MAXIMIZE_POSITIVE = 0,
    LS_MINIMIZE_NONNEGATIVE = 1
} ls_objective;

typedef enum ls_membership {
    LS_INSIDE = 0,
    LS_OUTSIDE = 1,
    LS_BOUNDARY_UNCERTAIN = 2
} ls_membership;

typedef enum ls_format {
    LS_FORMAT_CSV = 0,
    LS_FORMAT_JSON = 1,
    LS_FORMAT_SVG = 2
} ls_format;

typedef struct ls_context ls_context;
typedef struct ls_domain ls_domain;
typedef struct ls_optimization ls_optimization;
typedef struct ls_sweep ls_sweep;
typedef struct ls_report ls_report;

LS_API const char* ls_last_error(void);
LS_API const char* ls_version(void);

/* ---- execution context ------------------------------------------------ */

/* threads <= 0 selects the hardware concurrency. Results never depend on it. */
LS_API ls_status ls_context_create(int threads, ls_context** out);
LS_API void ls_context_destroy(ls_context* ctx);
LS_API int ls_context_threads(const ls_context* ctx);

/* ---- domain and measures ---------------------------------------------- */

LS_API ls_status ls_domain_create(const int* omegas, size_t d, ls_domain** out);
LS_API void ls_domain_destroy(ls_domain* domain);
LS_API size_t ls_domain_dim(const ls_domain* domain);
LS_API int ls_domain_omega_max(const ls_domain* domain);
/* 1 when d >= 3, the dimensions covered by the convergence theorems. */
LS_API int ls_domain_in_theorem_scope(const ls_domain* domain);

LS_API ls_status ls_octant_volume(const int* omegas, size_t m, double* out);
LS_API ls_status ls_domain_volume(const ls_domain* domain, double* volume_full, double* octant_volume);
/* |D_j| for j < d; len must be >= d. */
LS_API ls_status ls_domain_sections(const ls_domain* domain, double* out, size_t len);
/* |D_{j,k}| row-major d x d (zero diagonal); len >= d*d. Fails for d = 2. */
LS_API ls_status ls_domain_double_sections(const ls_domain* domain, double* out, size_t len);
LS_API ls_status ls_parallel_section(const ls_domain* domain, size_t axis, double x, double* out);
LS_API ls_status ls_balanced_factors(const ls_domain* domain, double* out, size_t len);
LS_API ls_status ls_gamma_rate(const ls_domain* domain, int64_t* num, int64_t* den);

/* ---- stretches and membership ----------------------------------------- */

/* Rescales a to unit product if |prod a - 1| <= tolerance; correction
 * receives the relative change applied (may be NULL). */
LS_API ls_status ls_normalize_factors(const double* a, size_t d, double tolerance, double* out,
                                      double* correction);
LS_API ls_status ls_a_star(const double* a, size_t d, double* out);
/* exact != 0 resolves boundary-uncertain cases in rational arithmetic. */
LS_API ls_status ls_classify_point(const ls_domain* domain, const double* a, double t, const int64_t* k,
                               size_t d, int exact, ls_membership* out);

/* ---- counting ------------------------------------------------------------ */

typedef struct ls_count_result {
    int64_t count;
    int64_t boundary_escalations;
} ls_count_result;

LS_API ls_status ls_count(ls_context* ctx, const ls_domain* domain, const double* a, double t,
                          ls_region region, ls_count_result* out);
/* Fails with LS_ERR_GUARD when the enumeration box exceeds 1e8 points. */
LS_API ls_status ls_brute_force_count(ls_context* ctx, const ls_domain* domain, const double* a,
                                      double t, ls_region region, ls_count_result* out);
LS_API ls_status ls_symmetry_check(ls_context* ctx, const ls_domain* domain, const double* a, double t,
                                   int* holds);

/* ---- asymptotics --------------------------------------------------------- */

typedef struct ls_prediction {
    double leading;
    double second;
    double error_budget;
    int in_hypothesis;
} ls_prediction;

LS_API ls_status ls_predict(const ls_domain* domain, const double* a, double t, ls_region region,
                            ls_prediction* out);
LS_API ls_status ls_remainder(ls_context* ctx, const ls_domain* domain, const double* a, double t,
                              ls_region region, double* out);
/* upper != 0 checks the positive-count upper bound, otherwise the
 * nonnegative-count lower bound. */
LS_API ls_status ls_check_two_term(ls_context* ctx, const ls_domain* domain, const double* a, double t,
                                   double c, int upper, int* holds);
/* factors is n x d row-major, ts has n entries. */
LS_API ls_status ls_estimate_c(ls_context* ctx, const ls_domain* domain, const double* factors,
                               const double* ts, size_t n, double* c_upper, double* c_lower);
LS_API ls_status ls_check_balanced_lemma(const double* s, size_t d, double epsilon, double constant,
                                         int* holds);

/* ---- optimization -------------------------------------------------------- */

typedef struct ls_search_config {
    int levels;
    int grid_per_axis;
    double initial_radius;
    int keep_top;
    int expand_limit;
} ls_search_config;

LS_API void ls_search_config_default(ls_search_config* config);

LS_API ls_status ls_evaluate_objective(ls_context* ctx, const ls_domain* domain, double t,
                                       ls_objective objective, const double* a, int64_t* out);
/* config may be NULL for defaults. */
LS_API ls_status ls_optimize(ls_context* ctx, const ls_domain* domain, double t, ls_objective objective,
                             const ls_search_config* config, ls_optimization** out);
LS_API void ls_optimization_destroy(ls_optimization* result);

typedef struct ls_optimization_info {
    double t;
    int64_t value;
    size_t tie_count;
    double resolution;
    int expansions;
    double max_radius;
    int boundary_warning;
    int64_t evaluations;
    double a_star;
} ls_optimization_info;

LS_API ls_status ls_optimization_get_info(const ls_optimization* result, ls_optimization_info* out);
LS_API ls_status ls_optimization_best(const ls_optimization* result, double* out, size_t len);
LS_API ls_status ls_optimization_deviations(const ls_optimization* result, double* out, size_t len);
LS_API ls_status ls_optimization_tie(const ls_optimization* result, size_t index, double* out, size_t len);

/* ---- sweeps ---------------------------------------------------------------- */

LS_API ls_status ls_log_spaced(double t_min, double t_max, int points, double* out, size_t len);
LS_API ls_status ls_sweep_run(ls_context* ctx, const ls_domain* domain, const double* t_grid, size_t n,
                              ls_objective objective, const ls_search_config* config, ls_sweep** out);
LS_API void ls_sweep_destroy(ls_sweep* sweep);
LS_API size_t ls_sweep_size(const ls_sweep* sweep);

typedef struct ls_sweep_record_info {
    double t;
    double max_deviation;
    int64_t count_observed;
    double count_predicted;
    double error_budget;
    double resolution;
    int boundary_warning;
} ls_sweep_record_info;

typedef struct ls_rate_fit {
    int saturated;
    double slope;
    double intercept;
    double r_squared;
    int64_t points_used;
    int64_t censored;
    int64_t gamma_num;
    int64_t gamma_den;
} ls_rate_fit;

LS_API ls_status ls_sweep_record(const ls_sweep* sweep, size_t index, ls_sweep_record_info* out);
LS_API ls_status ls_sweep_best(const ls_sweep* sweep, size_t index, double* out, size_t len);
LS_API ls_status ls_sweep_fit(const ls_sweep* sweep, ls_rate_fit* out);
/* Number of records with |observed - predicted| > factor * error_budget. */
LS_API ls_status ls_sweep_envelope_violations(const ls_sweep* sweep, double factor, size_t* out);
LS_API ls_status ls_sweep_emit(const ls_sweep* sweep, ls_format format, const char* path);

/* ---- property suites ------------------------------------------------------- */

typedef struct ls_verify_options {
    double t_max;
    uint64_t seed;
    int random_stretches;
    int lemma_samples_per_epsilon;
    double lemma_constant;
} ls_verify_options;

typedef struct ls_suite_info {
    const char* name;   /* owned by the report */
    int passed;
    int64_t cases;
    int64_t failures;
    const char* detail; /* owned by the report */
} ls_suite_info;

LS_API void ls_verify_options_default(ls_verify_options* options);
LS_API ls_status ls_verify(ls_context* ctx, const ls_domain* domain, const ls_verify_options* options,
                           ls_report** out);
LS_API void ls_report_destroy(ls_report* report);
LS_API size_t ls_report_size(const ls_report* report);
LS_API ls_status ls_report_suite(const ls_report* report, size_t index, ls_suite_info* out);
LS_API int ls_report_passed(const ls_report* report);

#ifdef __cplusplus
}
#endif

#endif /* LATSTRETCH_LATSTRETCH_H */
