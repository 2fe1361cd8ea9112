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

#include "qbridge/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "qbridge/error.hpp"

namespace qbridge {
namespace {

// Distance kept from an open support edge when clipping grids.
double edge_margin(double edge) { return 1e-6 * std::max(1.0, std::fabs(edge)); }

template <typename Fn>
CheckResult run_check(const std::string& name, double tolerance, Fn&& fn) {
  CheckResult r;
  r.name = name;
  r.tolerance = tolerance;
  try {
    r.value = fn(r.detail);
    r.passed = std::isfinite(r.value) && r.value < tolerance;
  } catch (const std::exception& e) {
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.passed = false;
    r.detail = e.what();
  }
  return r;
}

}  // namespace

Problem::Problem(TransformSpec spec, const SupportInterval& window)
    : map_(std::move(spec)),
      tsallis_(maxent::normalize_tsallis(map_.spec().q, map_.spec().cs,
                                         map_.spec().quad, window,
                                         map_.spec().anchor_x)),
      shannon_(maxent::shannon_from_multipliers(
          map_.spec().cs, map_.u_image(tsallis_.support), map_.spec().quad)) {}

OutputRow Problem::evaluate(double x) const {
  OutputRow row;
  row.x = x;
  row.g = map_.g(x);
  row.J = map_.J(x);
  row.u = map_.u(x);
  row.p_tsallis = tsallis_.density(x);
  row.p_shannon_pushforward = shannon_.density(row.u) * std::fabs(row.J);
  row.transport_residual = std::fabs(row.p_tsallis - row.p_shannon_pushforward);
  return row;
}

Grid Problem::make_grid(double lo, double hi, int count) const {
  if (count < 2 || !(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::kConfig,
                "grid requires finite min < max and count >= 2");
  }
  const SupportInterval& s = tsallis_.support;
  Grid grid;
  if (lo < s.lower || (lo == s.lower && !s.lower_closed)) {
    lo = s.lower_closed ? s.lower : s.lower + edge_margin(s.lower);
    grid.clipped = true;
  }
  if (hi > s.upper || (hi == s.upper && !s.upper_closed)) {
    hi = s.upper_closed ? s.upper : s.upper - edge_margin(s.upper);
    grid.clipped = true;
  }
  if (!(lo < hi)) {
    throw Error(ErrorCode::kDomain, "grid lies outside the Tsallis support");
  }
  grid.points.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    grid.points[i] = lo + (hi - lo) * i / (count - 1);
  }
  grid.points.back() = hi;
  return grid;
}

std::vector<CheckResult> run_battery(const Problem& problem,
                                     const std::vector<double>& grid,
                                     double transport_tol) {
  const TransformMap& map = problem.map();
  const TransformSpec& spec = map.spec();
  std::vector<CheckResult> out;

  out.push_back(run_check("ode_residual_analytic", 1e-10, [&](std::string&) {
    double worst = 0.0;
    for (double x : grid) {
      const double r = transform::ode_residual(
          x, spec, transform::g_canonical(x, spec),
          transform::g_canonical_slope(x, spec));
      worst = std::max(worst, std::fabs(r));
    }
    return worst;
  }));

  out.push_back(run_check("ode_residual_fd", 1e-5, [&](std::string& detail) {
    constexpr double kStep = 1e-6;
    double worst = 0.0;
    int used = 0;
    for (double x : grid) {
      if (!map.support().interior(x - kStep) ||
          !map.support().interior(x + kStep)) {
        continue;
      }
      const double slope = (map.g(x + kStep) - map.g(x - kStep)) / (2 * kStep);
      worst = std::max(
          worst, std::fabs(transform::ode_residual(x, spec, map.g(x), slope)));
      ++used;
    }
    detail = std::to_string(used) + " points";
    return worst;
  }));

  out.push_back(run_check("jacobian_identity", 1e-14, [&](std::string&) {
    double worst = 0.0;
    for (double x : grid) worst = std::max(worst, std::fabs(map.g(x) * map.J(x) - 1.0));
    return worst;
  }));

  out.push_back(run_check("sign_law", 0.5, [&](std::string& detail) {
    const int expected = spec.q.value() < 2.0 ? 1 : -1;
    int violations = 0;
    for (double x : grid) {
      const double g = transform::g_canonical(x, spec);
      if ((g > 0.0 ? 1 : -1) != expected) ++violations;
    }
    detail = "expected sign " + std::to_string(expected);
    return static_cast<double>(violations);
  }));

  out.push_back(run_check("roundtrip_x_u_x", 1e-9, [&](std::string&) {
    double worst = 0.0;
    for (double x : grid) {
      const double back = map.x(map.u(x));
      worst = std::max(worst, std::fabs(back - x) / std::max(1.0, std::fabs(x)));
    }
    return worst;
  }));

  const QuadratureSpec tight = spec.quad.tightened(10.0);
  const double norm_tol = 10.0 * spec.quad.rel_tol;
  out.push_back(run_check("tsallis_normalization", norm_tol, [&](std::string&) {
    const auto& t = problem.tsallis();
    return std::fabs(
        integrate([&](double x) { return t.density(x); }, t.support, tight) -
        1.0);
  }));
  out.push_back(run_check("shannon_normalization", norm_tol, [&](std::string&) {
    const auto& s = problem.shannon();
    return std::fabs(
        integrate([&](double u) { return s.density(u); }, s.domain, tight) -
        1.0);
  }));

  std::optional<double> factor;
  out.push_back(run_check("transport", transport_tol, [&](std::string& detail) {
    const auto report = maxent::verify_transport(
        problem.shannon(), problem.tsallis(), map, grid, transport_tol);
    factor = report.max_factor_residual;
    std::ostringstream msg;
    msg.precision(6);
    msg << "C=" << problem.tsallis().normalization
        << " mu=" << problem.shannon().mu;
    detail = msg.str();
    return report.max_abs_residual;
  }));
  if (factor) {
    CheckResult r;
    r.name = "pushforward_factor";
    r.tolerance = 1e-10;
    r.value = *factor;
    r.passed = *factor < r.tolerance;
    out.push_back(r);
  }

  out.push_back(run_check("ode_oracle_rk4", 1e-7, [&](std::string& detail) {
    if (grid.size() < 2) return 0.0;
    // Start at the grid point nearest the anchor and march outwards. The
    // drift blows up at a finite support edge, so each leg stops at 90% of
    // the way there.
    const SupportInterval& sup = map.support();
    double x0 = grid.front();
    for (double x : grid) {
      if (std::fabs(x - spec.anchor_x) < std::fabs(x0 - spec.anchor_x)) x0 = x;
    }
    const auto ode = maxent::LinearODE::from_transform(spec, x0, map.g(x0));
    constexpr int kSteps = 4000;
    double worst = 0.0;
    int legs = 0;
    for (int dir : {-1, 1}) {
      double end = dir < 0 ? grid.front() : grid.back();
      const double edge = dir < 0 ? sup.lower : sup.upper;
      if (std::isfinite(edge)) {
        const double limit = x0 + 0.9 * (edge - x0);
        end = dir < 0 ? std::max(end, limit) : std::min(end, limit);
      }
      if (dir * (end - x0) <= 0.0) continue;
      for (const auto& [x, g] : maxent::solve_ode_numeric(ode, end, kSteps)) {
        worst = std::max(worst, std::fabs(g - map.g(x)));
      }
      ++legs;
    }
    detail = std::to_string(legs) + " legs of " + std::to_string(kSteps) +
             " RK4 steps";
    return worst;
  }));

  return out;
}

}  // namespace qbridge
