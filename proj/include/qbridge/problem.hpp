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

// A transform together with its normalized Tsallis density on a working
// window and the Shannon density on the matching u-domain.

#ifndef QBRIDGE_PROBLEM_HPP_
#define QBRIDGE_PROBLEM_HPP_

#include <string>
#include <vector>

#include "qbridge/maxent.hpp"
#include "qbridge/transform.hpp"

namespace qbridge {

struct OutputRow {
  double x = 0.0;
  double g = 0.0;
  double J = 0.0;
  double u = 0.0;
  double p_tsallis = 0.0;
  double p_shannon_pushforward = 0.0;
  double transport_residual = 0.0;
};

struct Grid {
  std::vector<double> points;
  bool clipped = false;
};

class Problem {
 public:
  // The Tsallis density lives on qexp_support intersected with window; the
  // Shannon density on the image of that set under u.
  Problem(TransformSpec spec, const SupportInterval& window);

  const TransformMap& map() const noexcept { return map_; }
  const maxent::TsallisSolution& tsallis() const noexcept { return tsallis_; }
  const maxent::ShannonSolution& shannon() const noexcept { return shannon_; }

  OutputRow evaluate(double x) const;

  // count points from lo to hi inclusive, clipped to where every column of
  // OutputRow is finite.
  Grid make_grid(double lo, double hi, int count) const;

 private:
  TransformMap map_;
  maxent::TsallisSolution tsallis_;
  maxent::ShannonSolution shannon_;
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

// ODE residuals (analytic and finite-difference slope), g J = 1, the u
// round trip, the sign law, normalization, transport, and the RK4 oracle.
std::vector<CheckResult> run_battery(const Problem& problem,
                                     const std::vector<double>& grid,
                                     double transport_tol);

}  // namespace qbridge

#endif  // QBRIDGE_PROBLEM_HPP_
