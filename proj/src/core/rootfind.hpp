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

#ifndef QBRIDGE_SRC_CORE_ROOTFIND_HPP_
#define QBRIDGE_SRC_CORE_ROOTFIND_HPP_

#include <cmath>
#include <utility>

namespace qbridge::detail {

// Brent's method on a bracket with f(a) and f(b) of opposite sign (or one
// of them zero). Stops when the bracket is narrower than xtol.
template <typename F>
double brent_root(F&& f, double a, double b, double fa, double fb, double xtol,
                  int max_iter = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * 1.1e-16 * std::fabs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || fb == 0.0) return b;
    if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::fmin(3.0 * m * q - std::fabs(tol * q),
                              std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  return b;
}

// Plain bisection for a predicate that is true at `inside` and false at
// `outside`. Returns the final (inside, outside) pair, adjacent doubles
// unless max_iter ran out first.
template <typename Pred>
std::pair<double, double> bisect_boundary(Pred&& holds, double inside,
                                          double outside, int max_iter = 2000) {
  for (int iter = 0; iter < max_iter; ++iter) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    if (holds(mid)) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return {inside, outside};
}

}  // namespace qbridge::detail

#endif  // QBRIDGE_SRC_CORE_ROOTFIND_HPP_
