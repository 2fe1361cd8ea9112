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

#include "qbridge/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qbridge/error.hpp"
#include "rootfind.hpp"

namespace qbridge {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

void require_regular(const QIndex& q) {
  if (q.is_singular_for_transform()) {
    throw Error(ErrorCode::kSingularIndex,
                "q=" + fmt(q.value()) +
                    " lies inside the q=2 singular band (|q-2| < " +
                    fmt(q.eps_q2()) +
                    "): g diverges and the transformation is undefined at q=2");
  }
}

// 1 - (1-q) s(x): positive exactly on the q-exponential support.
Polynomial support_polynomial(const QIndex& q, const ConstraintSet& cs) {
  Polynomial f = cs.combined().scaled(-q.one_minus_q());
  f += Polynomial({1.0});
  return f;
}

double base_at(double x, const TransformSpec& spec) {
  return 1.0 - spec.q.one_minus_q() * spec.cs.dot(x);
}

void require_in_support(double x, const TransformSpec& spec, const char* op) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(op) + ": x must be finite");
  }
  if (!spec.q.is_classical() && !(base_at(x, spec) > 0.0)) {
    throw Error(ErrorCode::kDomain,
                std::string(op) + ": x=" + fmt(x) +
                    " lies outside the q-exponential support");
  }
}

// Real roots of a quadratic, sorted. Empty when the discriminant is
// negative.
std::vector<double> quadratic_roots(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  const double sq = std::sqrt(disc);
  const double qq = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  std::vector<double> roots;
  if (qq != 0.0) {
    roots.push_back(qq / a);
    roots.push_back(c / qq);
  } else {
    roots.push_back(0.0);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Nearest sign change of f away from the anchor in the given direction,
// found by a geometric scan followed by bisection. Returns +-inf when f stays
// positive out to infinity.
double scan_edge(const Polynomial& f, double anchor, int direction,
                 double window) {
  auto positive = [&f](double x) { return f(x) > 0.0; };
  double prev = anchor;
  double offset = 1e-8 * std::max(1.0, std::fabs(anchor));
  constexpr double kRatio = 1.001;
  while (true) {
    const double x = anchor + direction * offset;
    if (!std::isfinite(x)) return direction * kInf;
    if (!positive(x)) {
      return detail::bisect_boundary(positive, prev, x).second;
    }
    prev = x;
    if (std::fabs(x) >= window) {
      if (f.sign_at_infinity(direction) > 0) return direction * kInf;
      offset *= 2.0;
    } else {
      offset *= kRatio;
    }
  }
}

}  // namespace

namespace transform {

SupportInterval qexp_support(const QIndex& q, const ConstraintSet& cs,
                             double anchor_x, double window) {
  if (q.is_classical()) return SupportInterval::whole_line();
  const Polynomial f = support_polynomial(q, cs);
  if (!(f(anchor_x) > 0.0)) {
    throw Error(ErrorCode::kConfig,
                "anchor x=" + fmt(anchor_x) +
                    " lies outside the q-exponential support "
                    "(1 - (1-q) lambda.h(x) <= 0)");
  }
  double lower = -kInf;
  double upper = kInf;
  const auto& c = f.coefficients();
  if (f.degree() == 1) {
    const double root = -c[0] / c[1];
    (root > anchor_x ? upper : lower) = root;
  } else if (f.degree() == 2) {
    for (double root : quadratic_roots(c[2], c[1], c[0])) {
      if (root > anchor_x) upper = std::min(upper, root);
      if (root < anchor_x) lower = std::max(lower, root);
    }
  } else if (f.degree() > 2) {
    lower = scan_edge(f, anchor_x, -1, window);
    upper = scan_edge(f, anchor_x, +1, window);
  }
  return SupportInterval{lower, upper, false, false};
}

double g_general(double x, const TransformSpec& spec) {
  require_regular(spec.q);
  if (spec.q.is_classical()) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidArgument, "g_general: x must be finite");
    }
    return 1.0 + spec.c * std::exp(spec.cs.dot(x));
  }
  require_in_support(x, spec, "g_general");
  const double canonical = base_at(x, spec) / (2.0 - spec.q.value());
  if (spec.c == 0.0) return canonical;
  return canonical + spec.c / qkernel::q_exp(-spec.cs.dot(x), spec.q);
}

double g_canonical(double x, const TransformSpec& spec) {
  require_regular(spec.q);
  return base_at(x, spec) / (2.0 - spec.q.value());
}

double g_canonical_slope(double x, const TransformSpec& spec) {
  require_regular(spec.q);
  return -spec.q.one_minus_q() * spec.cs.dot_derivative(x) /
         (2.0 - spec.q.value());
}

double jacobian(double x, const TransformSpec& spec) {
  const double g = g_canonical(x, spec);
  if (g == 0.0) {
    throw EdgeSingularityError(
        "jacobian: g vanishes at the support edge x=" + fmt(x), x);
  }
  return 1.0 / g;
}

double u_of_x(double x, const TransformSpec& spec) {
  return TransformMap(spec).u(x);
}

double x_of_u(double u, const TransformSpec& spec) {
  return TransformMap(spec).x(u);
}

double ode_residual(double x, const TransformSpec& spec, double g_value,
                    double g_slope) {
  require_in_support(x, spec, "ode_residual");
  const double s = spec.cs.dot(x);
  const double ds = spec.cs.dot_derivative(x);
  const double drift =
      qkernel::q_exp_pow(-s, spec.q, spec.q.value() - 1.0) * ds;
  return g_slope - drift * g_value + ds;
}

double expand_g_near_q1(double x, double lambda, double eps) {
  if (!(std::fabs(eps) < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument,
                "expand_g_near_q1: |eps| must be below 0.5");
  }
  return 1.0 - (1.0 + lambda * x) * eps;
}

double g_near_q2(double x, double lambda, double eps) {
  if (eps == 0.0) {
    throw Error(ErrorCode::kSingularIndex,
                "g_near_q2: eps=0 is q=2 exactly, where g diverges");
  }
  // (1 + (1-eps) lambda x) / eps split into the divergent leading term and
  // its finite correction.
  const double lx = lambda * x;
  return (1.0 + lx) / eps - lx;
}

}  // namespace transform

TransformMap::TransformMap(TransformSpec spec) : spec_(std::move(spec)) {
  spec_.quad.validate();
  require_regular(spec_.q);
  if (!std::isfinite(spec_.c) || !std::isfinite(spec_.anchor_x) ||
      !std::isfinite(spec_.anchor_u)) {
    throw Error(ErrorCode::kInvalidArgument,
                "transform: c and the anchor must be finite");
  }
  support_ = transform::qexp_support(spec_.q, spec_.cs, spec_.anchor_x,
                                     spec_.support_window);
  base_at_anchor_ = base_at(spec_.anchor_x, spec_);

  const bool classical = spec_.q.is_classical();
  identity_ = classical && spec_.c == 0.0;
  const Polynomial& s = spec_.cs.combined();
  closed_form_ = !classical && spec_.c == 0.0 && s.degree() <= 1;
  if (closed_form_) {
    affine_a_ = s.coefficients()[0];
    affine_b_ = s.degree() == 1 ? s.coefficients()[1] : 0.0;
  }

  const double g_anchor = transform::g_general(spec_.anchor_x, spec_);
  if (g_anchor == 0.0) {
    throw EdgeSingularityError("transform: g vanishes at the anchor",
                               spec_.anchor_x);
  }
  orientation_ = g_anchor > 0.0 ? 1 : -1;
}

void TransformMap::require_inside(double x, const char* what) const {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": x must be finite");
  }
  if (!support_.interior(x)) {
    throw Error(ErrorCode::kDomain, std::string(what) + ": x=" + fmt(x) +
                                        " lies outside the support");
  }
}

double TransformMap::g(double x) const {
  require_inside(x, "g");
  return transform::g_general(x, spec_);
}

double TransformMap::J(double x) const {
  const double gx = g(x);
  if (gx == 0.0) {
    throw EdgeSingularityError("J: g vanishes at x=" + fmt(x), x);
  }
  return 1.0 / gx;
}

double TransformMap::u(double x) const {
  require_inside(x, "u");
  if (identity_) return x - spec_.anchor_x + spec_.anchor_u;
  if (closed_form_) {
    const double two_minus_q = 2.0 - spec_.q.value();
    const double dx = x - spec_.anchor_x;
    if (affine_b_ == 0.0) {
      return spec_.anchor_u + two_minus_q * dx / base_at_anchor_;
    }
    const double wb = spec_.q.one_minus_q() * affine_b_;
    return spec_.anchor_u -
           two_minus_q / wb * std::log1p(-wb * dx / base_at_anchor_);
  }
  return u_numeric(x);
}

double TransformMap::u_numeric(double x) const {
  if (x == spec_.anchor_x) return spec_.anchor_u;
  const double lo = std::min(x, spec_.anchor_x);
  const double hi = std::max(x, spec_.anchor_x);
  if (spec_.c != 0.0) {
    // g_general may vanish inside the support; refuse such paths.
    constexpr int kProbes = 256;
    for (int i = 0; i <= kProbes; ++i) {
      const double t = lo + (hi - lo) * i / kProbes;
      const double gt = transform::g_general(t, spec_);
      if (gt == 0.0 || (gt > 0.0 ? 1 : -1) != orientation_) {
        throw EdgeSingularityError(
            "u: the path from the anchor crosses a zero of g near x=" +
                fmt(t),
            t);
      }
    }
  }
  const double integral = integrate(
      [this](double t) { return 1.0 / transform::g_general(t, spec_); },
      SupportInterval::closed(lo, hi), spec_.quad);
  return x > spec_.anchor_x ? spec_.anchor_u + integral
                            : spec_.anchor_u - integral;
}

double TransformMap::x(double u) const {
  if (!std::isfinite(u)) {
    throw Error(ErrorCode::kInvalidArgument, "x: u must be finite");
  }
  if (identity_) return u - spec_.anchor_u + spec_.anchor_x;
  if (closed_form_) {
    const double two_minus_q = 2.0 - spec_.q.value();
    const double du = u - spec_.anchor_u;
    double x;
    if (affine_b_ == 0.0) {
      x = spec_.anchor_x + du * base_at_anchor_ / two_minus_q;
    } else {
      const double wb = spec_.q.one_minus_q() * affine_b_;
      x = spec_.anchor_x -
          base_at_anchor_ / wb * std::expm1(-du * wb / two_minus_q);
    }
    if (!std::isfinite(x) || !support_.interior(x)) {
      throw Error(ErrorCode::kRange,
                  "x: u=" + fmt(u) + " lies outside the attained range of u");
    }
    return x;
  }
  return x_bracketed(u);
}

double TransformMap::x_bracketed(double target) const {
  if (target == spec_.anchor_u) return spec_.anchor_x;
  const int direction =
      ((target - spec_.anchor_u) > 0.0 ? 1 : -1) * orientation_;
  const double edge = direction > 0 ? support_.upper : support_.lower;

  const double limit = u_limit(edge);
  if (!(orientation_ * direction * (limit - target) > 0.0)) {
    throw Error(ErrorCode::kRange, "x: u=" + fmt(target) +
                                       " lies outside the attained range (" +
                                       fmt(spec_.anchor_u) + ", " +
                                       fmt(limit) + ")");
  }

  // psi increases along `direction` and changes sign at the solution.
  auto psi = [&](double x) {
    return (u(x) - target) * orientation_ * direction;
  };
  double inner = spec_.anchor_x;
  double step = std::max(1.0, std::fabs(spec_.anchor_x)) * 0.5;
  double outer = inner;
  double psi_outer = -1.0;
  for (int iter = 0; iter < 2000; ++iter) {
    double candidate = inner + direction * step;
    if (std::isfinite(edge) && direction * (candidate - edge) >= 0.0) {
      candidate = 0.5 * (inner + edge);
    }
    if (candidate == inner || !std::isfinite(candidate)) break;
    const double value = psi(candidate);
    if (value >= 0.0) {
      outer = candidate;
      psi_outer = value;
      break;
    }
    inner = candidate;
    step *= 2.0;
  }
  if (psi_outer < 0.0) {
    throw Error(ErrorCode::kRange,
                "x: could not bracket u=" + fmt(target) + " inside the support");
  }
  const double psi_inner = psi(inner);
  const double xtol = 1e-12 * std::max(1.0, std::fabs(outer));
  return detail::brent_root(psi, inner, outer, psi_inner, psi_outer, xtol);
}

double TransformMap::u_limit(double endpoint) const {
  if (std::isnan(endpoint)) {
    throw Error(ErrorCode::kInvalidArgument, "u_limit: endpoint is NaN");
  }
  if (support_.interior(endpoint)) return u(endpoint);
  const bool at_upper = endpoint >= support_.upper;
  const bool at_lower = endpoint <= support_.lower;
  if (!(at_upper && endpoint == support_.upper) &&
      !(at_lower && endpoint == support_.lower)) {
    throw Error(ErrorCode::kDomain,
                "u_limit: endpoint " + fmt(endpoint) +
                    " is neither inside the support nor one of its edges");
  }
  const int direction = at_upper ? 1 : -1;
  const double divergent = direction * orientation_ * kInf;
  if (identity_ || closed_form_) return divergent;
  // Canonical g: J has a non-integrable pole at any finite edge.
  if (spec_.c == 0.0 && std::isfinite(endpoint)) return divergent;
  try {
    const SupportInterval path =
        direction > 0 ? SupportInterval{spec_.anchor_x, endpoint, true, false}
                      : SupportInterval{endpoint, spec_.anchor_x, false, true};
    const double integral = integrate(
        [this](double t) { return 1.0 / transform::g_general(t, spec_); },
        path, spec_.quad);
    return spec_.anchor_u + direction * integral;
  } catch (const QuadratureError&) {
    return divergent;
  }
}

SupportInterval TransformMap::u_image(const SupportInterval& interval) const {
  const double a = u_limit(interval.lower);
  const double b = u_limit(interval.upper);
  SupportInterval out;
  if (a <= b) {
    out = {a, b, interval.lower_closed && std::isfinite(a),
           interval.upper_closed && std::isfinite(b)};
  } else {
    out = {b, a, interval.upper_closed && std::isfinite(b),
           interval.lower_closed && std::isfinite(a)};
  }
  if (!(out.lower < out.upper)) {
    throw Error(ErrorCode::kDomain, "u_image: interval collapses under u");
  }
  return out;
}

}  // namespace qbridge
