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

// Expectation values under the three explicit Tsallis averaging schemes:
//
//   linear  <A>   = int p A
//   CT      <A>_q = int p^q A              (un-normalized, <1>_q = X_q)
//   TMP     <A>_q = int p^q A / X_q,   X_q = int p^q

#ifndef QBRIDGE_AVERAGING_HPP_
#define QBRIDGE_AVERAGING_HPP_

#include <functional>
#include <string>
#include <vector>

#include "qbridge/maxent.hpp"
#include "qbridge/qkernel.hpp"
#include "qbridge/quadrature.hpp"

namespace qbridge::averaging {

struct Density {
  std::function<double(double)> pdf;
  SupportInterval support;

  static Density from(const maxent::TsallisSolution& t);
  static Density from(const maxent::ShannonSolution& s);
};

struct Observable {
  std::function<double(double)> eval;
  std::string label;

  static Observable constant(double value);
  // Coefficients in ascending order of power.
  static Observable polynomial(std::vector<double> coefficients);
};

struct EscortWeight {
  QIndex q;
  double x_q = 1.0;
};

// CT mean, X_q and TMP mean from one shared adaptive partition.
struct EscortMoments {
  double ct = 0.0;
  double x_q = 1.0;
  double tmp = 0.0;
};

double mean_linear(const Density& p, const Observable& a,
                   const QuadratureSpec& quad);

EscortWeight escort_norm(const Density& p, const QIndex& q,
                         const QuadratureSpec& quad);

double mean_ct(const Density& p, const Observable& a, const QIndex& q,
               const QuadratureSpec& quad);

double mean_tmp(const Density& p, const Observable& a, const QIndex& q,
                const QuadratureSpec& quad);

EscortMoments escort_moments(const Density& p, const Observable& a,
                             const QIndex& q, const QuadratureSpec& quad);

}  // namespace qbridge::averaging

#endif  // QBRIDGE_AVERAGING_HPP_
