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

// Globally adaptive Gauss-Kronrod (7/15) quadrature.
//
// Infinite endpoints are mapped onto [0,1) or (-1,1) by monotone rational
// substitutions. A subinterval touching a mapped infinite endpoint whose
// mass falls below tail_mass_cut is accepted without further refinement.
//
// integrate_many() evaluates several integrands on one shared adaptive
// partition, so ratios of its components are exact at the discretization
// level.

#ifndef QBRIDGE_QUADRATURE_HPP_
#define QBRIDGE_QUADRATURE_HPP_

#include <functional>
#include <span>
#include <vector>

#include "qbridge/qkernel.hpp"

namespace qbridge {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 4000;
  double tail_mass_cut = 1e-12;

  // Throws kInvalidArgument when an invariant is broken.
  void validate() const;

  // Copy with rel_tol and abs_tol divided by factor.
  QuadratureSpec tightened(double factor) const;

  // Defaults, with rel_tol taken from QBRIDGE_QUAD_RTOL when that is set.
  static QuadratureSpec from_environment();
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

// Writes one value per component into out (out.size() == dims).
using VectorIntegrand = std::function<void(double, std::span<double>)>;

QuadratureResult integrate_detailed(const Integrand& f,
                                    const SupportInterval& interval,
                                    const QuadratureSpec& quad);

// Shorthand for integrate_detailed(...).value.
double integrate(const Integrand& f, const SupportInterval& interval,
                 const QuadratureSpec& quad);

std::vector<QuadratureResult> integrate_many(const VectorIntegrand& f,
                                             std::size_t dims,
                                             const SupportInterval& interval,
                                             const QuadratureSpec& quad);

}  // namespace qbridge

#endif  // QBRIDGE_QUADRATURE_HPP_
