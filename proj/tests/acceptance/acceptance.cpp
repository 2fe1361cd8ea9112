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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Reference values are computed here from
// elementary arithmetic, never from the library under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qbridge/averaging.hpp"
#include "qbridge/error.hpp"
#include "qbridge/maxent.hpp"
#include "qbridge/problem.hpp"
#include "qbridge/transform.hpp"

namespace {

using namespace qbridge;

const SupportInterval kHalfLine{0.0, SupportInterval::kInf, true, false};
const QuadratureSpec kQuad{};

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

TransformSpec spec_for(double q, std::vector<ConstraintFn> h,
                       std::vector<double> lambda) {
  TransformSpec spec;
  spec.q = QIndex(q);
  spec.cs = ConstraintSet(std::move(h), std::move(lambda));
  return spec;
}

TransformSpec linear(double q, double lambda = 1.0) {
  return spec_for(q, {ConstraintFn::identity()}, {lambda});
}

TransformSpec quadratic(double q) {
  return spec_for(q, {ConstraintFn::square()}, {1.0});
}

// n interior points of the q-exponential support, clipped to [-5, 5] and
// kept 1% away from finite edges.
std::vector<double> interior_points(const TransformSpec& spec, int n) {
  const auto sup = transform::qexp_support(spec.q, spec.cs);
  const double lo = std::isfinite(sup.lower) ? 0.99 * sup.lower : -5.0;
  const double hi = std::isfinite(sup.upper) ? 0.99 * sup.upper : 5.0;
  std::vector<double> x;
  for (int i = 1; i <= n; ++i) x.push_back(lo + (hi - lo) * i / (n + 1.0));
  return x;
}

// Independent closed form of the canonical solution.
double g_oracle(double q, double s) {
  return (1.0 - (1.0 - q) * s) / (2.0 - q);
}

Outcome criterion1() {
  double worst_analytic = 0.0;
  double worst_fd = 0.0;
  for (double q : {0.5, 1.3, 1.8, 2.5}) {
    for (const auto& spec : {linear(q), quadratic(q)}) {
      for (double x : interior_points(spec, 100)) {
        const double g = transform::g_canonical(x, spec);
        worst_analytic = std::max(
            worst_analytic,
            std::fabs(transform::ode_residual(x, spec, g,
                                              transform::g_canonical_slope(x, spec))));
        const double h = 1e-6;
        const double fd = (transform::g_canonical(x + h, spec) -
                           transform::g_canonical(x - h, spec)) / (2 * h);
        worst_fd = std::max(worst_fd,
                            std::fabs(transform::ode_residual(x, spec, g, fd)));
      }
    }
  }
  return {worst_analytic < 1e-10 && worst_fd < 1e-5,
          "analytic " + fmt(worst_analytic) + " fd " + fmt(worst_fd)};
}

Outcome criterion2() {
  double worst = 0.0;
  for (double q : {0.5, 1.3, 1.8}) {
    // Finite edge of 1 - (1-q) x > 0: above zero for q < 1, below for q > 1.
    const double edge = 1.0 / (1.0 - q);
    const double g0 = g_oracle(q, 0.0);
    const auto ode = maxent::LinearODE::from_transform(linear(q), 0.0, g0);
    for (const auto& [x, g] : maxent::solve_ode_numeric(ode, 0.9 * edge, 2000)) {
      worst = std::max(worst, std::fabs(g - g_oracle(q, x)));
    }
  }
  return {worst < 1e-7, "max |g_rk4 - g| " + fmt(worst)};
}

Outcome criterion3() {
  std::ostringstream detail;
  bool all = true;
  for (double q : {0.5, 1.5}) {
    for (bool square : {false, true}) {
      const auto spec = square ? quadratic(q) : linear(q);
      const SupportInterval window = square ? SupportInterval::whole_line() : kHalfLine;
      double residual = NAN;
      try {
        const Problem p(spec, window);
        const auto grid = square ? p.make_grid(-5.0, 5.0, 200) : p.make_grid(0.0, 10.0, 200);
        const auto r = maxent::verify_transport(p.shannon(), p.tsallis(), p.map(),
                                                grid.points, 1e-6);
        residual = r.max_abs_residual;
      } catch (const Error& e) {
        detail << "q=" << q << (square ? " h=x^2 " : " h=x ") << "error: " << e.what() << "; ";
        all = false;
        continue;
      }
      const bool ok = residual < 1e-6;
      all = all && ok;
      detail << "q=" << q << (square ? " h=x^2 " : " h=x ") << fmt(residual)
             << (ok ? "" : " (over)") << "; ";
    }
  }
  return {all, detail.str()};
}

Outcome criterion4() {
  double worst = 0.0;
  for (double q : {0.5, 1.5}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const TransformMap map(linear(q, lambda));
      // q < 1: stay below the edge 1/((1-q) lambda); q > 1: [0, 10].
      const double hi = q < 1.0 ? 0.95 / ((1.0 - q) * lambda) : 10.0;
      for (int i = 0; i < 50; ++i) {
        const double x = hi * i / 49.0;
        const double lhs = std::exp(-lambda * map.u(x)) / map.g(x);
        const double eq = std::pow(1.0 - (1.0 - q) * lambda * x, 1.0 / (1.0 - q));
        worst = std::max(worst, std::fabs(lhs - (2.0 - q) * eq));
      }
    }
  }
  return {worst < 1e-10, "max residual " + fmt(worst)};
}

Outcome criterion5() {
  double lo = 1e300;
  double hi = -1e300;
  for (double x : {0.5, 1.0, 2.0}) {
    auto err = [&](double eps) {
      const double q = 1.0 - eps;
      return std::fabs(transform::expand_g_near_q1(x, 1.0, eps) - g_oracle(q, x));
    };
    const double ratio = err(1e-2) / err(5e-3);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {lo >= 3.5 && hi <= 4.5, "ratios in [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

Outcome criterion6() {
  bool singular = false;
  try {
    TransformMap m(linear(2.0));
  } catch (const Error& e) {
    singular = e.code() == ErrorCode::kSingularIndex;
  }
  int violations = 0;
  int probes = 0;
  for (double q : {1.9, 2.1}) {
    const auto spec = linear(q);
    const auto sup = transform::qexp_support(spec.q, spec.cs);
    for (int i = 0; i <= 400; ++i) {
      const double x = -0.999 + i * 0.025;
      // lambda x > -1 restricted to where e_q(-lambda x) is defined.
      if (!sup.interior(x)) continue;
      ++probes;
      const double g = transform::g_canonical(x, spec);
      if ((g > 0.0) != (q < 2.0)) ++violations;
    }
  }
  const double g19 = transform::g_near_q2(1.0, 1.0, 0.1);
  const bool exact = g19 == 19.0;
  char g19_text[32];
  std::snprintf(g19_text, sizeof g19_text, "%.17g", g19);
  return {singular && violations == 0 && exact,
          std::string("singular-index ") + (singular ? "yes" : "no") + ", sign violations " +
              std::to_string(violations) + "/" + std::to_string(probes) +
              ", g(1; 2-0.1) = " + g19_text};
}

Outcome criterion7() {
  const auto a = maxent::solve_shannon(
      ConstraintSet({ConstraintFn::identity()}, {1.0}, {2.0}), kHalfLine, kQuad);
  const auto b = maxent::solve_shannon(
      ConstraintSet({ConstraintFn::square()}, {1.0}, {1.0}),
      SupportInterval::whole_line(), kQuad);
  const double ea = std::max(std::fabs(a.cs.multipliers()[0] - 0.5),
                             std::fabs(a.mu - std::log(2.0)));
  const double eb = std::max(std::fabs(b.cs.multipliers()[0] - 0.5),
                             std::fabs(b.mu - std::log(std::sqrt(2 * std::numbers::pi))));
  return {ea < 1e-8 && eb < 1e-8, "exponential " + fmt(ea) + " gaussian " + fmt(eb)};
}

Outcome criterion8() {
  std::ostringstream detail;
  bool all = true;
  for (double q : {0.5, 1.5}) {
    const Problem p(linear(q), kHalfLine);
    const auto r = maxent::sample_and_test(p.tsallis(), p.map(), 100000, 20261017);
    // Oracle CDF 1 - e_q(-x)^{2-q}, clamped at the q < 1 edge.
    const auto cdf = [q](double x) {
      const double base = std::max(0.0, 1.0 - (1.0 - q) * x);
      return 1.0 - std::pow(base, (2.0 - q) / (1.0 - q));
    };
    const double ks = maxent::ks_distance(r.samples, cdf);
    all = all && ks < 0.01;
    detail << "q=" << q << " KS " << fmt(ks) << "; ";
  }
  return {all, detail.str()};
}

Outcome criterion9() {
  using namespace averaging;
  const Density p{[](double x) {
                    if (x < 0.0 || x >= 2.0) return 0.0;
                    return 1.5 * (1 - x / 2) * (1 - x / 2);
                  },
                  SupportInterval{0.0, 2.0, true, false}};
  const Observable a = Observable::polynomial({0, 1});
  double unit = 0.0;
  double ratio = 0.0;
  for (double q : {0.3, 0.5, 0.8, 1.0, 1.4, 1.9}) {
    unit = std::max(unit,
                    std::fabs(mean_tmp(p, Observable::constant(1.0), QIndex(q), kQuad) - 1.0));
    const EscortMoments em = escort_moments(p, a, QIndex(q), kQuad);
    ratio = std::max(ratio, std::fabs(em.tmp - em.ct / em.x_q));
  }
  const EscortMoments em = escort_moments(p, a, QIndex(0.5), kQuad);
  const double fixture = std::max({std::fabs(em.x_q - std::sqrt(1.5)),
                                   std::fabs(em.ct - std::sqrt(1.5) * 2.0 / 3.0),
                                   std::fabs(em.tmp - 2.0 / 3.0)});
  return {unit < 1e-10 && ratio < 1e-12 && fixture < 1e-8,
          "tmp(1) " + fmt(unit) + " ratio " + fmt(ratio) + " fixture " + fmt(fixture)};
}

Outcome criterion10() {
  double formula = 0.0;
  double residual = 0.0;
  for (double q : {0.5, 1.5}) {
    const auto spec = spec_for(q, {ConstraintFn::identity(), ConstraintFn::square()},
                               {0.5, 0.3});
    for (double x : interior_points(spec, 100)) {
      const double s = 0.5 * x + 0.3 * x * x;
      const double g = transform::g_canonical(x, spec);
      formula = std::max(formula, std::fabs(g - g_oracle(q, s)) / std::max(1.0, std::fabs(g)));
      residual = std::max(
          residual, std::fabs(transform::ode_residual(x, spec, g,
                                                      transform::g_canonical_slope(x, spec))));
    }
  }
  return {formula < 1e-13 && residual < 1e-10,
          "formula " + fmt(formula) + " residual " + fmt(residual)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "ODE exactness", 1.0, criterion1},
      {2, "closed form vs RK4", 1.0, criterion2},
      {3, "transport identity", 5.0, criterion3},
      {4, "(2-q) pushforward factor", 5.0, criterion4},
      {5, "q->1 expansion order", 1.0, criterion5},
      {6, "q=2 behaviour", 1.0, criterion6},
      {7, "Shannon solver", 1.0, criterion7},
      {8, "Monte-Carlo KS", 5.0, criterion8},
      {9, "averaging identities", 5.0, criterion9},
      {10, "M-constraint formula", 1.0, criterion10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool ok = o.passed && in_time;
    if (!ok) ++failures;
    std::printf("%s criterion %d (%s): %s [%.3fs%s]\n", ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, in_time ? "" : " over budget");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
