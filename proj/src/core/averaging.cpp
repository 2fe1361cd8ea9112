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

#include "qbridge/averaging.hpp"

#include <cmath>
#include <cstdio>

#include "qbridge/error.hpp"

namespace qbridge::averaging {
namespace {

// p^q with 0^q = 0.
double escort_weight(double p, const QIndex& q) {
  if (p <= 0.0) return 0.0;
  return q.is_classical() ? p : std::pow(p, q.value());
}

}  // namespace

Density Density::from(const maxent::TsallisSolution& t) {
  return {[t](double x) { return t.density(x); }, t.support};
}

Density Density::from(const maxent::ShannonSolution& s) {
  return {[s](double u) { return s.density(u); }, s.domain};
}

Observable Observable::constant(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return {[value](double) { return value; }, buf};
}

Observable Observable::polynomial(std::vector<double> coefficients) {
  Polynomial p(coefficients);
  std::string label = "poly:";
  char buf[32];
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", coefficients[k]);
    if (k > 0) label += ',';
    label += buf;
  }
  return {[p](double x) { return p(x); }, label};
}

double mean_linear(const Density& p, const Observable& a,
                   const QuadratureSpec& quad) {
  return integrate(
      [&](double x) {
        const double px = p.pdf(x);
        return px == 0.0 ? 0.0 : px * a.eval(x);
      },
      p.support, quad);
}

EscortMoments escort_moments(const Density& p, const Observable& a,
                             const QIndex& q, const QuadratureSpec& quad) {
  const VectorIntegrand f = [&](double x, std::span<double> out) {
    const double w = escort_weight(p.pdf(x), q);
    out[0] = w == 0.0 ? 0.0 : w * a.eval(x);
    out[1] = w;
  };
  std::vector<QuadratureResult> r;
  try {
    r = integrate_many(f, 2, p.support, quad);
  } catch (const QuadratureError& e) {
    throw Error(ErrorCode::kNonNormalizable,
                std::string("escort integral of p^q does not converge "
                            "(heavy tail for this q?): ") +
                    e.what());
  }
  EscortMoments out;
  out.ct = r[0].value;
  out.x_q = r[1].value;
  if (!(out.x_q > 0.0) || !std::isfinite(out.x_q)) {
    throw Error(ErrorCode::kNonNormalizable,
                "escort normalization X_q is not positive and finite");
  }
  out.tmp = out.ct / out.x_q;
  return out;
}

EscortWeight escort_norm(const Density& p, const QIndex& q,
                         const QuadratureSpec& quad) {
  return {q, escort_moments(p, Observable::constant(1.0), q, quad).x_q};
}

double mean_ct(const Density& p, const Observable& a, const QIndex& q,
               const QuadratureSpec& quad) {
  return escort_moments(p, a, q, quad).ct;
}

double mean_tmp(const Density& p, const Observable& a, const QIndex& q,
                const QuadratureSpec& quad) {
  return escort_moments(p, a, q, quad).tmp;
}

}  // namespace qbridge::averaging
