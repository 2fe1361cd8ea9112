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

// q-deformed exponential and logarithm.
//
//   e_q(z)  = [1 + (1-q) z]^{1/(1-q)}      (0 past the cutoff when q < 1)
//   ln_q(y) = (y^{1-q} - 1) / (1-q)
//   d/dz e_q(z) = e_q(z)^q
//
// Near q = 1 the power forms lose all precision, so QIndex routes indices
// within eps_q1 of 1 straight to exp/log.

#ifndef QBRIDGE_QKERNEL_HPP_
#define QBRIDGE_QKERNEL_HPP_

#include <limits>

namespace qbridge {

inline constexpr double kDefaultEpsQ1 = 1e-9;
inline constexpr double kDefaultEpsQ2 = 1e-6;

class QIndex {
 public:
  explicit QIndex(double q, double eps_q1 = kDefaultEpsQ1,
                  double eps_q2 = kDefaultEpsQ2);

  double value() const noexcept { return q_; }
  double eps_q1() const noexcept { return eps_q1_; }
  double eps_q2() const noexcept { return eps_q2_; }

  // 1 - q, the exponent denominator.
  double one_minus_q() const noexcept { return 1.0 - q_; }

  bool is_classical() const noexcept;
  bool is_singular_for_transform() const noexcept;

 private:
  double q_;
  double eps_q1_;
  double eps_q2_;
};

// Interval of the real line with optionally infinite and optionally
// closed endpoints. An edge where a q-exponential density reaches zero is
// reported open.
struct SupportInterval {
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  double lower = -kInf;
  double upper = kInf;
  bool lower_closed = false;
  bool upper_closed = false;

  static SupportInterval whole_line() { return {}; }
  static SupportInterval open(double lo, double hi);
  static SupportInterval closed(double lo, double hi);

  bool contains(double x) const noexcept;
  bool interior(double x) const noexcept { return x > lower && x < upper; }
  bool lower_finite() const noexcept;
  bool upper_finite() const noexcept;
  bool bounded() const noexcept { return lower_finite() && upper_finite(); }

  // Intersection of two intervals. Throws kConfig when empty.
  SupportInterval intersect(const SupportInterval& other) const;
};

namespace qkernel {

// e_q(z). Returns 0 past the cutoff for q < 1; throws kDomain at or past the
// pole z = 1/(q-1) for q > 1.
double q_exp(double z, const QIndex& q);

// Inverse of q_exp on its support. Throws kDomain for y <= 0.
double q_log(double y, const QIndex& q);

// e_q(z)^q. Zero past a q < 1 cutoff, kDomain at or past a q > 1 pole.
double q_exp_deriv(double z, const QIndex& q);

// e_q(z)^power, computed in log space so that tiny bases near the cutoff
// do not underflow before the power is applied.
double q_exp_pow(double z, const QIndex& q, double power);

// 1 + (1-q) z, the q-exponential base. Positive exactly on the support.
inline double q_base(double z, const QIndex& q) {
  return 1.0 + q.one_minus_q() * z;
}

}  // namespace qkernel
}  // namespace qbridge

#endif  // QBRIDGE_QKERNEL_HPP_
