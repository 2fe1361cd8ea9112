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

// Shannon and Tsallis MaxEnt densities, the transport check between them,
// and two independent oracles for the transformation: a fixed-step RK4
// solution of the linear ODE for g, and a Monte-Carlo pushforward tested
// with Kolmogorov-Smirnov.

#ifndef QBRIDGE_MAXENT_HPP_
#define QBRIDGE_MAXENT_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qbridge/constraints.hpp"
#include "qbridge/qkernel.hpp"
#include "qbridge/quadrature.hpp"
#include "qbridge/transform.hpp"

namespace qbridge::maxent {

// p(u) = exp(-mu - lambda.h(u)) on `domain`; targets K_i = <h_i>.
struct ShannonSolution {
  double mu = 0.0;
  ConstraintSet cs;
  SupportInterval domain;

  // Zero outside the domain.
  double density(double u) const;
};

// p(x) = C e_q(-lambda.h(x)) on `support`.
struct TsallisSolution {
  double normalization = 1.0;
  QIndex q;
  ConstraintSet cs;
  SupportInterval support;

  // Zero outside the support.
  double density(double x) const;
};

// Solves lambda for the targets in cs by damped Newton on the convex dual
// (bisection fallback for one observable). M <= 3.
ShannonSolution solve_shannon(const ConstraintSet& cs,
                              const SupportInterval& domain,
                              const QuadratureSpec& quad);

// Shannon density with the multipliers of cs taken as given; mu and the
// targets follow from quadrature.
ShannonSolution shannon_from_multipliers(const ConstraintSet& cs,
                                         const SupportInterval& domain,
                                         const QuadratureSpec& quad);

// Normalizes C e_q(-lambda.h(x)) over the q-exponential support intersected
// with `window`. The multipliers are carried over verbatim. anchor_x must
// lie in the support; it picks the support component when there are several.
TsallisSolution normalize_tsallis(
    const QIndex& q, const ConstraintSet& cs, const QuadratureSpec& quad,
    const SupportInterval& window = SupportInterval::whole_line(),
    double anchor_x = 0.0);

// Throws kNonNormalizable when exp(-lambda.h) has infinite mass on domain.
void require_shannon_normalizable(const ConstraintSet& cs,
                                  const SupportInterval& domain);

// Throws kNonNormalizable when e_q(-lambda.h) has infinite mass on region.
void require_tsallis_normalizable(const QIndex& q, const ConstraintSet& cs,
                                  const SupportInterval& region);

// Integral of p h^2 over the support; throws when it diverges.
double second_moment(const TsallisSolution& t, const ConstraintFn& h,
                     const QuadratureSpec& quad);

struct TransportReport {
  struct Point {
    double x = 0.0;
    double residual = 0.0;
  };

  std::vector<double> grid;
  double max_abs_residual = 0.0;
  std::vector<Point> profile;
  // max |exp(-lambda u)/g - (2-q) e_q(-lambda x)|, present for h(x) = x with
  // anchor (0, 0) and c = 0.
  std::optional<double> max_factor_residual;
  bool passed = false;
};

// Pointwise |C e_q(-s(x)) - e^{-mu} e^{-s(u(x))} |J(x)|| over the grid.
TransportReport verify_transport(const ShannonSolution& s,
                                 const TsallisSolution& t,
                                 const TransformMap& map,
                                 const std::vector<double>& grid, double tol);

// g'(x) + P(x) g(x) = Q(x) with g(x0) = g0.
struct LinearODE {
  std::function<double(double)> drift;
  std::function<double(double)> forcing;
  double x0 = 0.0;
  double g0 = 0.0;

  // P = -e_q(-s)^{q-1} s', Q = -s' for the spec's s = lambda.h.
  static LinearODE from_transform(const TransformSpec& spec, double x0,
                                  double g0);

  // exp(integral_{x0}^{x} P), by quadrature.
  double integrating_factor(double x, const QuadratureSpec& quad) const;
};

// Classical RK4 with `steps` equal steps from ode.x0 to x_end. Returns
// steps + 1 (x, g) pairs including the initial point.
std::vector<std::pair<double, double>> solve_ode_numeric(const LinearODE& ode,
                                                         double x_end,
                                                         int steps);

struct SampleResult {
  std::vector<double> samples;
  double ks_statistic = 0.0;
};

// Draws n exponential(lambda) variates u by inverse CDF from a seeded
// std::mt19937_64 (53-bit uniforms from the top bits), maps them through
// x(u), and returns the samples in draw order with the exact KS distance
// to the Tsallis CDF F(x) = 1 - e_q(-lambda x)^{2-q}.
SampleResult sample_and_test(const TsallisSolution& t, const TransformMap& map,
                             std::size_t n, std::uint64_t seed);

// Exact two-sided KS distance of the samples against cdf.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

}  // namespace qbridge::maxent

#endif  // QBRIDGE_MAXENT_HPP_
