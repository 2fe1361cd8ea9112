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

// The Shannon <-> Tsallis change of variables.
//
// A Shannon MaxEnt density exp(-mu - lambda.h(u)) in u and a Tsallis one
// C e_q(-lambda.h(x)) in x share the multipliers lambda. The variables are
// linked by dx/du = g(x), where g solves
//
//   g'(x) - e_q(-s(x))^{q-1} s'(x) g(x) + s'(x) = 0,   s = lambda.h,
//
// with general solution
//
//   g(x) = e_q(-s)^{-1} [ e_q(-s)^{2-q} / (2-q) + c ].
//
// Requiring g -> 1 as q -> 1 forces c = 0, which leaves
//
//   g(x) = (1 - (1-q) s(x)) / (2-q),    J(x) = 1 / g(x).
//
// g is positive for q < 2, negative for q > 2, and undefined at q = 2.

#ifndef QBRIDGE_TRANSFORM_HPP_
#define QBRIDGE_TRANSFORM_HPP_

#include <optional>

#include "qbridge/constraints.hpp"
#include "qbridge/qkernel.hpp"
#include "qbridge/quadrature.hpp"

namespace qbridge {

inline constexpr double kDefaultSupportWindow = 1e6;

struct TransformSpec {
  QIndex q{1.0};
  ConstraintSet cs{ConstraintFn::identity(), 1.0};
  double c = 0.0;
  double anchor_x = 0.0;
  double anchor_u = 0.0;
  QuadratureSpec quad{};
  // Half-width of the scan window used to locate support edges of
  // polynomial observables of degree three or more.
  double support_window = kDefaultSupportWindow;
};

namespace transform {

// Maximal open interval around anchor_x on which 1 - (1-q) s(x) > 0.
// Throws kConfig when anchor_x itself violates the condition.
SupportInterval qexp_support(const QIndex& q, const ConstraintSet& cs,
                             double anchor_x = 0.0,
                             double window = kDefaultSupportWindow);

// g with the caller's integration constant. Throws kDomain outside the
// support and kSingularIndex inside the q = 2 band.
double g_general(double x, const TransformSpec& spec);

// g with c = 0. Defined on the closed support (0 at a cutoff edge).
double g_canonical(double x, const TransformSpec& spec);

// d/dx g_canonical = -(1-q) s'(x) / (2-q).
double g_canonical_slope(double x, const TransformSpec& spec);

// 1 / g_canonical. Throws EdgeSingularityError where g vanishes.
double jacobian(double x, const TransformSpec& spec);

// u(x) with u(anchor_x) = anchor_u.
double u_of_x(double x, const TransformSpec& spec);

// Inverse of u_of_x.
double x_of_u(double u, const TransformSpec& spec);

// Left-hand side of the generalized ODE for the supplied g and g'.
double ode_residual(double x, const TransformSpec& spec, double g_value,
                    double g_slope);

// First-order expansion of g at q = 1 - eps for h(x) = x:
// 1 - (1 + lambda x) eps. Requires |eps| < 0.5.
double expand_g_near_q1(double x, double lambda, double eps);

// g at q = 2 - eps for h(x) = x: (1 + (1-eps) lambda x) / eps.
// Throws kSingularIndex for eps == 0.
double g_near_q2(double x, double lambda, double eps);

}  // namespace transform

// Immutable evaluator bundle for one TransformSpec. Caches the support and
// picks closed forms for u and its inverse whenever lambda.h is affine and
// c = 0; everything else goes through quadrature of J and bracketing.
class TransformMap {
 public:
  explicit TransformMap(TransformSpec spec);

  const TransformSpec& spec() const noexcept { return spec_; }
  const SupportInterval& support() const noexcept { return support_; }

  // +1 when g > 0 on the support, -1 when g < 0.
  int orientation() const noexcept { return orientation_; }

  double g(double x) const;
  double J(double x) const;
  double u(double x) const;
  double x(double u) const;

  // Limit of u at an endpoint of the support (possibly infinite). Returns
  // +-inf where the integral of J diverges.
  double u_limit(double endpoint) const;

  // Image of [lo, hi] (subset of the support closure) under u, ordered.
  SupportInterval u_image(const SupportInterval& interval) const;

  // True when u and its inverse are evaluated in closed form.
  bool closed_form() const noexcept { return closed_form_; }

 private:
  void require_inside(double x, const char* what) const;
  double u_numeric(double x) const;
  double x_bracketed(double u) const;

  TransformSpec spec_;
  SupportInterval support_;
  int orientation_ = 1;
  bool closed_form_ = false;
  bool identity_ = false;
  // s(x) = affine_a + affine_b x when closed_form_.
  double affine_a_ = 0.0;
  double affine_b_ = 0.0;
  double base_at_anchor_ = 1.0;
};

}  // namespace qbridge

#endif  // QBRIDGE_TRANSFORM_HPP_
