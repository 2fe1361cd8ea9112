/*
 * Copyright 2026 The qbridge Authors
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

/*
 * C interface to qbridge.
 *
 * Every fallible call returns a qb_status. On failure a human-readable
 * message is available from qb_last_error() on the calling thread until the
 * next qbridge call on that thread. Handles are opaque, immutable after
 * creation, and may be shared between threads for read-only calls.
 */

#ifndef QBRIDGE_QBRIDGE_H_
#define QBRIDGE_QBRIDGE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(QBRIDGE_BUILDING_LIBRARY)
#define QB_API __attribute__((visibility("default")))
#else
#define QB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qb_status {
  QB_OK = 0,
  QB_ERR_INVALID_ARGUMENT = 1,
  QB_ERR_CONFIG = 2,
  QB_ERR_DOMAIN = 3,
  QB_ERR_SINGULAR_INDEX = 4,
  QB_ERR_EDGE_SINGULARITY = 5,
  QB_ERR_RANGE = 6,
  QB_ERR_NON_NORMALIZABLE = 7,
  QB_ERR_INFEASIBLE = 8,
  QB_ERR_QUADRATURE = 9,
  QB_ERR_SOLVER = 10,
  QB_ERR_INSTABILITY = 11,
  QB_ERR_UNSUPPORTED = 12,
  QB_ERR_INTERNAL = 13
} qb_status;

typedef enum qb_h_kind {
  QB_H_IDENTITY = 0,
  QB_H_SQUARE = 1,
  QB_H_POLYNOMIAL = 2
} qb_h_kind;

/* One observable h(x) with its multiplier. coeffs (ascending powers) is read
 * only for QB_H_POLYNOMIAL. */
typedef struct qb_constraint {
  qb_h_kind kind;
  const double* coeffs;
  size_t n_coeffs;
  double lambda;
} qb_constraint;

typedef struct qb_quad_spec {
  double rel_tol;
  double abs_tol;
  int max_subdivisions;
  double tail_mass_cut;
} qb_quad_spec;

/* Interval endpoints; use +-INFINITY for unbounded ends. Finite ends are
 * closed. */
typedef struct qb_interval {
  double lower;
  double upper;
} qb_interval;

typedef struct qb_problem_config {
  double q;
  const qb_constraint* constraints;
  size_t n_constraints;
  double c;
  double anchor_x;
  double anchor_u;
  qb_interval window;
  qb_quad_spec quad;
} qb_problem_config;

typedef struct qb_row {
  double x;
  double g;
  double J;
  double u;
  double p_tsallis;
  double p_shannon_pushforward;
  double transport_residual;
} qb_row;

typedef struct qb_averages {
  double linear;
  double ct;
  double tmp;
  double x_q;
} qb_averages;

typedef struct qb_map_s* qb_map_t;
typedef struct qb_problem_s* qb_problem_t;
typedef struct qb_report_s* qb_report_t;

QB_API const char* qb_version(void);
QB_API const char* qb_status_string(qb_status status);
QB_API const char* qb_last_error(void);

/* Defaults; rel_tol honours QBRIDGE_QUAD_RTOL. */
QB_API qb_status qb_quad_spec_default(qb_quad_spec* out);

/* q-exponential kernel. */
QB_API qb_status qb_q_exp(double z, double q, double* out);
QB_API qb_status qb_q_log(double y, double q, double* out);
QB_API qb_status qb_q_exp_deriv(double z, double q, double* out);

/* Transform map: g, J, u(x), x(u) without any density normalization.
 * config->window is ignored. */
QB_API qb_status qb_map_create(const qb_problem_config* config, qb_map_t* out);
QB_API void qb_map_destroy(qb_map_t map);
QB_API qb_status qb_map_support(qb_map_t map, qb_interval* out);
QB_API qb_status qb_map_orientation(qb_map_t map, int* out);
QB_API qb_status qb_map_g(qb_map_t map, double x, double* out);
QB_API qb_status qb_map_g_canonical(qb_map_t map, double x, double* out);
QB_API qb_status qb_map_jacobian(qb_map_t map, double x, double* out);
QB_API qb_status qb_map_u(qb_map_t map, double x, double* out);
QB_API qb_status qb_map_x(qb_map_t map, double u, double* out);
QB_API qb_status qb_map_ode_residual(qb_map_t map, double x, double g_value,
                                     double g_slope, double* out);

/* Full problem: transform plus normalized Tsallis and Shannon densities. */
QB_API qb_status qb_problem_create(const qb_problem_config* config,
                                   qb_problem_t* out);
QB_API void qb_problem_destroy(qb_problem_t problem);
QB_API qb_status qb_problem_support(qb_problem_t problem, qb_interval* out);
QB_API qb_status qb_problem_shannon_domain(qb_problem_t problem,
                                           qb_interval* out);
QB_API qb_status qb_problem_normalization(qb_problem_t problem,
                                          double* tsallis_c,
                                          double* shannon_mu);
QB_API qb_status qb_problem_eval(qb_problem_t problem, double x, qb_row* out);

/* Builds count grid points from lo to hi clipped to the support interior.
 * points must hold count doubles. *clipped is set to 1 when clipping
 * happened. */
QB_API qb_status qb_problem_grid(qb_problem_t problem, double lo, double hi,
                                 int count, double* points, int* clipped);

/* Invariant battery over the grid. The report must be freed. */
QB_API qb_status qb_problem_verify(qb_problem_t problem, const double* grid,
                                   size_t n, double transport_tol,
                                   qb_report_t* out);
QB_API size_t qb_report_count(qb_report_t report);
QB_API qb_status qb_report_check(qb_report_t report, size_t index,
                                 const char** name, double* value,
                                 double* tolerance, int* passed,
                                 const char** detail);
QB_API int qb_report_passed(qb_report_t report);
QB_API void qb_report_destroy(qb_report_t report);

/* Seeded inverse-CDF sampling pushed through x(u); samples must hold n
 * doubles. */
QB_API qb_status qb_problem_sample(qb_problem_t problem, size_t n,
                                   uint64_t seed, double* samples,
                                   double* ks_statistic);

/* Linear, CT, TMP means of the polynomial observable (ascending coeffs)
 * under the problem's Tsallis density, with escort index q_avg. */
QB_API qb_status qb_problem_averages(qb_problem_t problem, double q_avg,
                                     const double* a_coeffs, size_t n_coeffs,
                                     qb_averages* out);

/* Shannon MaxEnt: solves the multipliers for the targets. lambdas_out holds
 * n_constraints values; the lambda fields of constraints are ignored. */
QB_API qb_status qb_solve_shannon(const qb_constraint* constraints,
                                  size_t n_constraints, const double* targets,
                                  qb_interval domain, const qb_quad_spec* quad,
                                  double* lambdas_out, double* mu_out);

#ifdef __cplusplus
}
#endif

#endif /* QBRIDGE_QBRIDGE_H_ */
