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

#include "qbridge/constraints.hpp"

#include <cmath>
#include <cstdio>

#include "qbridge/error.hpp"

namespace qbridge {

Polynomial::Polynomial(std::vector<double> coefficients)
    : c_(std::move(coefficients)) {
  if (c_.empty()) c_.push_back(0.0);
  for (double v : c_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "polynomial coefficients must be finite");
    }
  }
  trim();
}

void Polynomial::trim() {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::derivative(double x) const noexcept {
  double acc = 0.0;
  for (std::size_t k = c_.size() - 1; k >= 1; --k) {
    acc = acc * x + static_cast<double>(k) * c_[k];
  }
  return acc;
}

int Polynomial::sign_at_infinity(int direction) const noexcept {
  const double lead = leading();
  if (lead == 0.0) return 0;
  int sign = lead > 0.0 ? 1 : -1;
  if (direction < 0 && degree() % 2 == 1) sign = -sign;
  return sign;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0.0);
  for (std::size_t k = 0; k < other.c_.size(); ++k) c_[k] += other.c_[k];
  trim();
  return *this;
}

Polynomial Polynomial::scaled(double factor) const {
  std::vector<double> out = c_;
  for (double& v : out) v *= factor;
  return Polynomial(std::move(out));
}

ConstraintFn ConstraintFn::identity() {
  return {ConstraintKind::kIdentity, Polynomial({0.0, 1.0})};
}

ConstraintFn ConstraintFn::square() {
  return {ConstraintKind::kSquare, Polynomial({0.0, 0.0, 1.0})};
}

ConstraintFn ConstraintFn::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "polynomial observable needs at least one coefficient");
  }
  return {ConstraintKind::kPolynomial, Polynomial(std::move(coefficients))};
}

std::string ConstraintFn::label() const {
  switch (kind_) {
    case ConstraintKind::kIdentity: return "identity";
    case ConstraintKind::kSquare: return "square";
    case ConstraintKind::kPolynomial: break;
  }
  std::string out = "poly:";
  char buf[32];
  for (std::size_t k = 0; k < poly_.coefficients().size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", poly_.coefficients()[k]);
    if (k > 0) out += ',';
    out += buf;
  }
  return out;
}

bool ConstraintFn::operator==(const ConstraintFn& other) const {
  return poly_.coefficients() == other.poly_.coefficients();
}

ConstraintSet::ConstraintSet(std::vector<ConstraintFn> constraints,
                             std::vector<double> multipliers,
                             std::vector<double> targets)
    : constraints_(std::move(constraints)),
      lambda_(std::move(multipliers)),
      targets_(std::move(targets)) {
  if (constraints_.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "constraint set needs at least one observable");
  }
  if (lambda_.size() != constraints_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "one multiplier per observable is required");
  }
  if (!targets_.empty() && targets_.size() != constraints_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "one target per observable is required");
  }
  for (double v : lambda_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "multipliers must be finite");
    }
  }
  for (double v : targets_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "targets must be finite");
    }
  }
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    combined_ += constraints_[i].as_polynomial().scaled(lambda_[i]);
  }
}

ConstraintSet::ConstraintSet(ConstraintFn constraint, double multiplier)
    : ConstraintSet(std::vector<ConstraintFn>{std::move(constraint)},
                    std::vector<double>{multiplier}) {}

bool ConstraintSet::is_single_identity() const noexcept {
  return constraints_.size() == 1 &&
         constraints_.front().kind() == ConstraintKind::kIdentity;
}

ConstraintSet ConstraintSet::with_multipliers(
    std::vector<double> multipliers) const {
  return ConstraintSet(constraints_, std::move(multipliers), targets_);
}

ConstraintSet ConstraintSet::with_targets(std::vector<double> targets) const {
  return ConstraintSet(constraints_, lambda_, std::move(targets));
}

bool ConstraintSet::same_problem(const ConstraintSet& other) const {
  return constraints_ == other.constraints_ && lambda_ == other.lambda_;
}

}  // namespace qbridge
