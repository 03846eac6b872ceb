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

/* Exercises the shared library from plain C. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "latstretch/latstretch.h"

static int failures = 0;

#define EXPECT(cond)                                                        \
    do {                                                                    \
        if (!(cond)) {                                                      \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                     \
        }                                                                   \
    } while (0)

static int close_to(double x, double y, double rel)
{
    return fabs(x - y) <= rel * fabs(y);
}

int main(void)
{
    const double pi = 3.14159265358979323846;
    ls_context* ctx = NULL;
    ls_domain* ball = NULL;
    ls_domain* mixed = NULL;
    const int w_ball[3] = {2, 2, 2};
    const int w_mixed[3] = {2, 2, 4};
    const int w_bad[2] = {3, 4};
    ls_domain* bad = NULL;

    EXPECT(ls_version() != NULL);
    EXPECT(ls_context_create(2, &ctx) == LS_OK);
    EXPECT(ls_context_threads(ctx) == 2);
    EXPECT(ls_domain_create(w_ball, 3, &ball) == LS_OK);
    EXPECT(ls_domain_create(w_mixed, 3, &mixed) == LS_OK);
    EXPECT(ls_domain_create(w_bad, 2, &bad) == LS_ERR_INVALID_ARGUMENT);
    EXPECT(bad == NULL);
    EXPECT(strstr(ls_last_error(), "exponent 3 is not even") != NULL);
    EXPECT(ls_domain_dim(ball) == 3);
    EXPECT(ls_domain_omega_max(mixed) == 4);
    EXPECT(ls_domain_in_theorem_scope(ball));

    {
        double full = 0, oct = 0, sections[3], b[3];
        int64_t num = 0, den = 0;
        EXPECT(ls_domain_volume(ball, &full, &oct) == LS_OK);
        EXPECT(close_to(full, 4 * pi / 3, 1e-12));
        EXPECT(close_to(oct, pi / 6, 1e-12));
        EXPECT(ls_domain_sections(mixed, sections, 3) == LS_OK);
        EXPECT(close_to(sections[2], pi, 1e-12));
        EXPECT(ls_domain_sections(mixed, sections, 2) == LS_ERR_INVALID_ARGUMENT);
        EXPECT(ls_balanced_factors(mixed, b, 3) == LS_OK);
        EXPECT(fabs(b[0] - 1.0363) < 1e-4 && fabs(b[2] - 0.9312) < 1e-4);
        EXPECT(ls_gamma_rate(mixed, &num, &den) == LS_OK);
        EXPECT(num == 1 && den == 4);
    }

    {
        const int64_t k[3] = {2, 0, 0};
        ls_membership m;
        EXPECT(ls_classify_point(ball, NULL, 2.0, k, 3, 0, &m) == LS_OK);
        EXPECT(m == LS_BOUNDARY_UNCERTAIN);
        EXPECT(ls_classify_point(ball, NULL, 2.0, k, 3, 1, &m) == LS_OK);
        EXPECT(m == LS_INSIDE);
        EXPECT(ls_classify_point(ball, NULL, 2.0, k, 2, 1, &m) == LS_ERR_INVALID_ARGUMENT);
    }

    {
        const ls_region regions[4] = {LS_REGION_FULL, LS_REGION_POSITIVE, LS_REGION_NONNEGATIVE,
                                      LS_REGION_HYPERPLANE_UNION};
        const int64_t expected[4] = {33, 1, 11, 25};
        const double a[3] = {2.0, 1.0, 0.5};
        ls_count_result fast, slow;
        int holds = 0;
        for (int i = 0; i < 4; ++i) {
            EXPECT(ls_count(ctx, ball, NULL, 2.0, regions[i], &fast) == LS_OK);
            EXPECT(fast.count == expected[i]);
            EXPECT(ls_count(ctx, ball, a, 2.0, regions[i], &fast) == LS_OK);
            EXPECT(ls_brute_force_count(ctx, ball, a, 2.0, regions[i], &slow) == LS_OK);
            EXPECT(fast.count == slow.count);
        }
        EXPECT(ls_brute_force_count(ctx, ball, NULL, 400.0, LS_REGION_FULL, &slow) == LS_ERR_GUARD);
        EXPECT(ls_count(ctx, ball, NULL, -1.0, LS_REGION_FULL, &fast) == LS_ERR_INVALID_ARGUMENT);
        EXPECT(ls_symmetry_check(ctx, mixed, NULL, 3.0, &holds) == LS_OK && holds);
    }

    {
        double c_up = 0, c_lo = 0, r = 0;
        const double id[3] = {1, 1, 1};
        const double t = 2.0;
        int holds = 0;
        ls_prediction p;
        EXPECT(ls_predict(ball, NULL, 2.0, LS_REGION_POSITIVE, &p) == LS_OK);
        EXPECT(close_to(p.second, -3 * pi / 2, 1e-12));
        EXPECT(ls_remainder(ctx, ball, NULL, 2.0, LS_REGION_FULL, &r) == LS_OK);
        EXPECT(fabs(r + 0.510) < 1e-3);
        EXPECT(ls_estimate_c(ctx, ball, id, &t, 1, &c_up, &c_lo) == LS_OK);
        EXPECT(fabs(c_up - 0.797) < 1e-3 && fabs(c_lo - 1.703) < 1e-3);
        EXPECT(ls_check_two_term(ctx, ball, NULL, 2.0, 0.01, 1, &holds) == LS_OK && holds);
        EXPECT(ls_check_two_term(ctx, ball, NULL, 2.0, 0.01, 0, &holds) == LS_OK && holds);
    }

    {
        ls_optimization* opt = NULL;
        ls_optimization_info info;
        ls_search_config cfg;
        double best[3];
        ls_search_config_default(&cfg);
        EXPECT(cfg.levels == 7 && cfg.grid_per_axis == 17 && cfg.keep_top == 5 && cfg.expand_limit == 3);
        EXPECT(cfg.initial_radius == 0.5);
        cfg.levels = 3;
        EXPECT(ls_optimize(ctx, mixed, 10.0, LS_MAXIMIZE_POSITIVE, &cfg, &opt) == LS_OK);
        EXPECT(ls_optimization_get_info(opt, &info) == LS_OK);
        EXPECT(info.tie_count >= 1);
        EXPECT(ls_optimization_best(opt, best, 3) == LS_OK);
        EXPECT(fabs(best[0] * best[1] * best[2] - 1.0) < 1e-12);
        EXPECT(ls_optimization_tie(opt, info.tie_count, best, 3) == LS_ERR_INVALID_ARGUMENT);
        ls_optimization_destroy(opt);
        cfg.grid_per_axis = 4;
        EXPECT(ls_optimize(ctx, mixed, 10.0, LS_MAXIMIZE_POSITIVE, &cfg, &opt) == LS_ERR_INVALID_ARGUMENT);
    }

    {
        double grid[2];
        ls_sweep* sweep = NULL;
        ls_search_config cfg;
        ls_rate_fit fit;
        ls_sweep_record_info rec;
        ls_search_config_default(&cfg);
        cfg.levels = 2;
        EXPECT(ls_log_spaced(10.0, 20.0, 2, grid, 2) == LS_OK);
        EXPECT(ls_sweep_run(ctx, mixed, grid, 2, LS_MAXIMIZE_POSITIVE, &cfg, &sweep) == LS_OK);
        EXPECT(ls_sweep_size(sweep) == 2);
        EXPECT(ls_sweep_record(sweep, 1, &rec) == LS_OK && rec.t == 20.0);
        EXPECT(ls_sweep_fit(sweep, &fit) == LS_OK && fit.gamma_num == 1 && fit.gamma_den == 4);
        EXPECT(ls_sweep_emit(sweep, LS_FORMAT_CSV, "/nonexistent-dir/out.csv") == LS_ERR_IO);
        ls_sweep_destroy(sweep);
        EXPECT(ls_sweep_run(ctx, mixed, grid, 0, LS_MAXIMIZE_POSITIVE, &cfg, &sweep) == LS_ERR_INVALID_ARGUMENT);
    }

    {
        const double s[3] = {1.0, 1.0, 1.0};
        int holds = 0;
        EXPECT(ls_check_balanced_lemma(s, 3, 1e-3, 10.0, &holds) == LS_OK && holds);
    }

    ls_domain_destroy(ball);
    ls_domain_destroy(mixed);
    ls_context_destroy(ctx);
    if (failures == 0) printf("all C API checks passed\n");
    return failures == 0 ? 0 : 1;
}
