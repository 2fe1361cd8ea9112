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

#ifndef QBRIDGE_CONSTRAINTS_HPP_
#define QBRIDGE_CONSTRAINTS_HPP_

#include <span>
#include <string>
#include <vector>

namespace qbridge {

// Dense polynomial, coefficients in ascending order of power. Trailing
// zero coefficients are trimmed so degree() is exact.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  const std::vector<double>& coefficients() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  double leading() const noexcept { return c_.back(); }

  double operator()(double x) const noexcept;
  double derivative(double x) const noexcept;

  // Sign of p(x) as x -> +inf (direction > 0) or -inf (direction < 0).
  int sign_at_infinity(int direction) const noexcept;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial scaled(double factor) const;

 private:
  void trim();

  std::vector<double> c_{0.0};
};

enum class ConstraintKind { kIdentity, kSquare, kPolynomial };

// One observable h(x) with its exact derivative.
class ConstraintFn {
 public:
  static ConstraintFn identity();
  static ConstraintFn square();
  static ConstraintFn polynomial(std::vector<double> coefficients);

  ConstraintKind kind() const noexcept { return kind_; }
  const Polynomial& as_polynomial() const noexcept { return poly_; }

  double value(double x) const noexcept { return poly_(x); }
  double derivative(double x) const noexcept { return poly_.derivative(x); }

  // "identity", "square", or "poly:c0,c1,...".
  std::string label() const;

  bool operator==(const ConstraintFn& other) const;

 private:
  ConstraintFn(ConstraintKind kind, Polynomial poly)
      : kind_(kind), poly_(std::move(poly)) {}

  ConstraintKind kind_;
  Polynomial poly_;
};

// Observables h_1..h_M with multipliers lambda_1..lambda_M and, once known,
// target means K_1..K_M.
class ConstraintSet {
 public:
  ConstraintSet(std::vector<ConstraintFn> constraints,
                std::vector<double> multipliers,
                std::vector<double> targets = {});

  // Single observable shorthand.
  ConstraintSet(ConstraintFn constraint, double multiplier);

  std::size_t size() const noexcept { return constraints_.size(); }
  const std::vector<ConstraintFn>& constraints() const noexcept {
    return constraints_;
  }
  const std::vector<double>& multipliers() const noexcept { return lambda_; }
  const std::vector<double>& targets() const noexcept { return targets_; }
  bool has_targets() const noexcept { return !targets_.empty(); }

  // lambda . h(x) and its derivative.
  double dot(double x) const noexcept { return combined_(x); }
  double dot_derivative(double x) const noexcept {
    return combined_.derivative(x);
  }

  // lambda . h as one polynomial.
  const Polynomial& combined() const noexcept { return combined_; }

  // True when M = 1 and h is the identity observable.
  bool is_single_identity() const noexcept;

  ConstraintSet with_multipliers(std::vector<double> multipliers) const;
  ConstraintSet with_targets(std::vector<double> targets) const;

  // Same observables and bit-identical multipliers. Targets are ignored.
  bool same_problem(const ConstraintSet& other) const;

 private:
  std::vector<ConstraintFn> constraints_;
  std::vector<double> lambda_;
  std::vector<double> targets_;
  Polynomial combined_;
};

}  // namespace qbridge

#endif  // QBRIDGE_CONSTRAINTS_HPP_
