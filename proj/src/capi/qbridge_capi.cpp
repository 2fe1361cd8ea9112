// Copyright 2026 The qbridge Authors
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

#include "qbridge/qbridge.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "qbridge/averaging.hpp"
#include "qbridge/error.hpp"
#include "qbridge/maxent.hpp"
#include "qbridge/problem.hpp"
#include "qbridge/transform.hpp"

struct qb_map_s {
  qbridge::TransformMap map;
};

struct qb_problem_s {
  qbridge::Problem problem;
};

struct qb_report_s {
  std::vector<qbridge::CheckResult> checks;
};

namespace {

thread_local std::string g_last_error;

qb_status to_status(qbridge::ErrorCode code) {
  using qbridge::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return QB_ERR_INVALID_ARGUMENT;
    case ErrorCode::kConfig: return QB_ERR_CONFIG;
    case ErrorCode::kDomain: return QB_ERR_DOMAIN;
    case ErrorCode::kSingularIndex: return QB_ERR_SINGULAR_INDEX;
    case ErrorCode::kEdgeSingularity: return QB_ERR_EDGE_SINGULARITY;
    case ErrorCode::kRange: return QB_ERR_RANGE;
    case ErrorCode::kNonNormalizable: return QB_ERR_NON_NORMALIZABLE;
    case ErrorCode::kFeasibility: return QB_ERR_INFEASIBLE;
    case ErrorCode::kQuadrature: return QB_ERR_QUADRATURE;
    case ErrorCode::kSolver: return QB_ERR_SOLVER;
    case ErrorCode::kInstability: return QB_ERR_INSTABILITY;
    case ErrorCode::kUnsupported: return QB_ERR_UNSUPPORTED;
  }
  return QB_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes and the thread-local
// error message.
template <typename Fn>
qb_status guarded(Fn&& fn) noexcept {
  g_last_error.clear();
  try {
    fn();
    return QB_OK;
  } catch (const qbridge::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return QB_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw qbridge::Error(qbridge::ErrorCode::kInvalidArgument, what);
}

qbridge::QuadratureSpec to_quad(const qb_quad_spec& in) {
  qbridge::QuadratureSpec quad;
  quad.rel_tol = in.rel_tol;
  quad.abs_tol = in.abs_tol;
  quad.max_subdivisions = in.max_subdivisions;
  quad.tail_mass_cut = in.tail_mass_cut;
  quad.validate();
  return quad;
}

qbridge::SupportInterval to_interval(const qb_interval& in) {
  require(!std::isnan(in.lower) && !std::isnan(in.upper) &&
              in.lower < in.upper,
          "interval requires lower < upper");
  return qbridge::SupportInterval{in.lower, in.upper, std::isfinite(in.lower),
                                  std::isfinite(in.upper)};
}

qb_interval from_interval(const qbridge::SupportInterval& in) {
  return {in.lower, in.upper};
}

qbridge::ConstraintFn to_constraint_fn(const qb_constraint& c) {
  switch (c.kind) {
    case QB_H_IDENTITY: return qbridge::ConstraintFn::identity();
    case QB_H_SQUARE: return qbridge::ConstraintFn::square();
    case QB_H_POLYNOMIAL:
      require(c.coeffs != nullptr && c.n_coeffs > 0,
              "polynomial observable needs coefficients");
      return qbridge::ConstraintFn::polynomial(
          std::vector<double>(c.coeffs, c.coeffs + c.n_coeffs));
  }
  throw qbridge::Error(qbridge::ErrorCode::kInvalidArgument,
                       "unknown observable kind");
}

qbridge::ConstraintSet to_constraint_set(const qb_constraint* cs, size_t n,
                                         const double* targets) {
  require(cs != nullptr && n > 0, "at least one constraint is required");
  std::vector<qbridge::ConstraintFn> fns;
  std::vector<double> lambdas;
  for (size_t i = 0; i < n; ++i) {
    fns.push_back(to_constraint_fn(cs[i]));
    lambdas.push_back(cs[i].lambda);
  }
  std::vector<double> k;
  if (targets != nullptr) k.assign(targets, targets + n);
  return qbridge::ConstraintSet(std::move(fns), std::move(lambdas),
                                std::move(k));
}

qbridge::TransformSpec to_spec(const qb_problem_config& config) {
  qbridge::TransformSpec spec;
  spec.q = qbridge::QIndex(config.q);
  spec.cs = to_constraint_set(config.constraints, config.n_constraints, nullptr);
  spec.c = config.c;
  spec.anchor_x = config.anchor_x;
  spec.anchor_u = config.anchor_u;
  spec.quad = to_quad(config.quad);
  return spec;
}

}  // namespace

extern "C" {

const char* qb_version(void) { return "0.1.0"; }

const char* qb_status_string(qb_status status) {
  switch (status) {
    case QB_OK: return "ok";
    case QB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QB_ERR_CONFIG: return "configuration error";
    case QB_ERR_DOMAIN: return "domain error";
    case QB_ERR_SINGULAR_INDEX: return "singular index";
    case QB_ERR_EDGE_SINGULARITY: return "edge singularity";
    case QB_ERR_RANGE: return "range error";
    case QB_ERR_NON_NORMALIZABLE: return "non-normalizable";
    case QB_ERR_INFEASIBLE: return "infeasible constraints";
    case QB_ERR_QUADRATURE: return "quadrature failure";
    case QB_ERR_SOLVER: return "solver failure";
    case QB_ERR_INSTABILITY: return "numerical instability";
    case QB_ERR_UNSUPPORTED: return "unsupported regime";
    case QB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qb_last_error(void) { return g_last_error.c_str(); }

qb_status qb_quad_spec_default(qb_quad_spec* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const auto quad = qbridge::QuadratureSpec::from_environment();
    *out = {quad.rel_tol, quad.abs_tol, quad.max_subdivisions,
            quad.tail_mass_cut};
  });
}

qb_status qb_q_exp(double z, double q, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qbridge::qkernel::q_exp(z, qbridge::QIndex(q));
  });
}

qb_status qb_q_log(double y, double q, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qbridge::qkernel::q_log(y, qbridge::QIndex(q));
  });
}

qb_status qb_q_exp_deriv(double z, double q, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qbridge::qkernel::q_exp_deriv(z, qbridge::QIndex(q));
  });
}

qb_status qb_map_create(const qb_problem_config* config, qb_map_t* out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = new qb_map_s{qbridge::TransformMap(to_spec(*config))};
  });
}

void qb_map_destroy(qb_map_t map) { delete map; }

qb_status qb_map_support(qb_map_t map, qb_interval* out) {
  return guarded([&] {
    require(map != nullptr && out != nullptr, "null argument");
    *out = from_interval(map->map.support());
  });
}

qb_status qb_map_orientation(qb_map_t map, int* out) {
  return guarded([&] {
    require(map != nullptr && out != nullptr, "null argument");
    *out = map->map.orientation();
  });
}

qb_status qb_map_g(qb_map_t map, double x, double* out) {
  return guarded([&] {
    require(map != nullptr && out != nullptr, "null argument");
    *out = map->map.g(x);
  });
}

qb_status qb_map_g_canonical(qb_map_t map, double x, double* out) {
  return guarded([&] {
    require(map != nullptr && out != nullptr, "null argument");
    *out = qbridge::transform::g_canonical(x, map->map.spec());
  });
}

qb_status qb_map_jacobian(qb_map_t map, double x, double* out) {
  return guarded([&] {
    require(map != nullptr && out != nullptr, "null argument");
    *out = qbridge::transform::jacobian(x, map->map.spec());
  });
}

qb_status qb_map_u(qb_map_t map, double x, double* out) {
  return guarded([&] {
    require(map != nullptr && out != nullptr, "null argument");
    *out = map->map.u(x);
  });
}

qb_status qb_map_x(qb_map_t map, double u, double* out) {
  return guarded([&] {
    require(map != nullptr && out != nullptr, "null argument");
    *out = map->map.x(u);
  });
}

qb_status qb_map_ode_residual(qb_map_t map, double x, double g_value,
                              double g_slope, double* out) {
  return guarded([&] {
    require(map != nullptr && out != nullptr, "null argument");
    *out = qbridge::transform::ode_residual(x, map->map.spec(), g_value,
                                            g_slope);
  });
}

qb_status qb_problem_create(const qb_problem_config* config,
                            qb_problem_t* out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = new qb_problem_s{
        qbridge::Problem(to_spec(*config), to_interval(config->window))};
  });
}

void qb_problem_destroy(qb_problem_t problem) { delete problem; }

qb_status qb_problem_support(qb_problem_t problem, qb_interval* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    *out = from_interval(problem->problem.tsallis().support);
  });
}

qb_status qb_problem_shannon_domain(qb_problem_t problem, qb_interval* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    *out = from_interval(problem->problem.shannon().domain);
  });
}

qb_status qb_problem_normalization(qb_problem_t problem, double* tsallis_c,
                                   double* shannon_mu) {
  return guarded([&] {
    require(problem != nullptr, "null argument");
    if (tsallis_c) *tsallis_c = problem->problem.tsallis().normalization;
    if (shannon_mu) *shannon_mu = problem->problem.shannon().mu;
  });
}

qb_status qb_problem_eval(qb_problem_t problem, double x, qb_row* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    const qbridge::OutputRow r = problem->problem.evaluate(x);
    *out = {r.x, r.g, r.J, r.u, r.p_tsallis, r.p_shannon_pushforward,
            r.transport_residual};
  });
}

qb_status qb_problem_grid(qb_problem_t problem, double lo, double hi,
                          int count, double* points, int* clipped) {
  return guarded([&] {
    require(problem != nullptr && points != nullptr, "null argument");
    const qbridge::Grid grid = problem->problem.make_grid(lo, hi, count);
    std::copy(grid.points.begin(), grid.points.end(), points);
    if (clipped) *clipped = grid.clipped ? 1 : 0;
  });
}

qb_status qb_problem_verify(qb_problem_t problem, const double* grid, size_t n,
                            double transport_tol, qb_report_t* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    require(grid != nullptr && n > 0, "empty grid");
    require(transport_tol > 0.0, "transport tolerance must be positive");
    *out = nullptr;
    *out = new qb_report_s{qbridge::run_battery(
        problem->problem, std::vector<double>(grid, grid + n), transport_tol)};
  });
}

size_t qb_report_count(qb_report_t report) {
  return report ? report->checks.size() : 0;
}

qb_status qb_report_check(qb_report_t report, size_t index, const char** name,
                          double* value, double* tolerance, int* passed,
                          const char** detail) {
  return guarded([&] {
    require(report != nullptr, "null argument");
    require(index < report->checks.size(), "check index out of range");
    const auto& c = report->checks[index];
    if (name) *name = c.name.c_str();
    if (value) *value = c.value;
    if (tolerance) *tolerance = c.tolerance;
    if (passed) *passed = c.passed ? 1 : 0;
    if (detail) *detail = c.detail.c_str();
  });
}

int qb_report_passed(qb_report_t report) {
  if (!report) return 0;
  for (const auto& c : report->checks) {
    if (!c.passed) return 0;
  }
  return 1;
}

void qb_report_destroy(qb_report_t report) { delete report; }

qb_status qb_problem_sample(qb_problem_t problem, size_t n, uint64_t seed,
                            double* samples, double* ks_statistic) {
  return guarded([&] {
    require(problem != nullptr, "null argument");
    const auto result = qbridge::maxent::sample_and_test(
        problem->problem.tsallis(), problem->problem.map(), n, seed);
    if (samples) std::copy(result.samples.begin(), result.samples.end(), samples);
    if (ks_statistic) *ks_statistic = result.ks_statistic;
  });
}

qb_status qb_problem_averages(qb_problem_t problem, double q_avg,
                              const double* a_coeffs, size_t n_coeffs,
                              qb_averages* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    require(a_coeffs != nullptr && n_coeffs > 0,
            "observable needs at least one coefficient");
    namespace avg = qbridge::averaging;
    const auto& t = problem->problem.tsallis();
    const auto& quad = problem->problem.map().spec().quad;
    const avg::Density p = avg::Density::from(t);
    const avg::Observable a = avg::Observable::polynomial(
        std::vector<double>(a_coeffs, a_coeffs + n_coeffs));
    const qbridge::QIndex q(q_avg);
    const avg::EscortMoments em = avg::escort_moments(p, a, q, quad);
    out->linear = avg::mean_linear(p, a, quad);
    out->ct = em.ct;
    out->tmp = em.tmp;
    out->x_q = em.x_q;
  });
}

qb_status qb_solve_shannon(const qb_constraint* constraints,
                           size_t n_constraints, const double* targets,
                           qb_interval domain, const qb_quad_spec* quad,
                           double* lambdas_out, double* mu_out) {
  return guarded([&] {
    require(targets != nullptr && quad != nullptr && lambdas_out != nullptr,
            "null argument");
    const qbridge::ConstraintSet cs =
        to_constraint_set(constraints, n_constraints, targets);
    const auto sol = qbridge::maxent::solve_shannon(cs, to_interval(domain),
                                                    to_quad(*quad));
    std::copy(sol.cs.multipliers().begin(), sol.cs.multipliers().end(),
              lambdas_out);
    if (mu_out) *mu_out = sol.mu;
  });
}

}  // extern "C"
