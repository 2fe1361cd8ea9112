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

#include "qbridge/qkernel.hpp"

#include <cmath>
#include <sstream>

#include "qbridge/error.hpp"

namespace qbridge {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kConfig: return "configuration error";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kSingularIndex: return "singular index";
    case ErrorCode::kEdgeSingularity: return "edge singularity";
    case ErrorCode::kRange: return "range error";
    case ErrorCode::kNonNormalizable: return "non-normalizable";
    case ErrorCode::kFeasibility: return "infeasible constraints";
    case ErrorCode::kQuadrature: return "quadrature failure";
    case ErrorCode::kSolver: return "solver failure";
    case ErrorCode::kInstability: return "numerical instability";
    case ErrorCode::kUnsupported: return "unsupported regime";
  }
  return "unknown error";
}

QIndex::QIndex(double q, double eps_q1, double eps_q2)
    : q_(q), eps_q1_(eps_q1), eps_q2_(eps_q2) {
  if (!std::isfinite(q)) {
    throw Error(ErrorCode::kInvalidArgument, "entropic index q must be finite");
  }
  if (!(eps_q1 > 0.0) || !(eps_q2 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "q guard thresholds eps_q1 and eps_q2 must be positive");
  }
}

bool QIndex::is_classical() const noexcept {
  return std::fabs(q_ - 1.0) < eps_q1_;
}

bool QIndex::is_singular_for_transform() const noexcept {
  return std::fabs(q_ - 2.0) < eps_q2_;
}

SupportInterval SupportInterval::open(double lo, double hi) {
  if (!(lo < hi)) {
    throw Error(ErrorCode::kInvalidArgument, "interval requires lower < upper");
  }
  return {lo, hi, false, false};
}

SupportInterval SupportInterval::closed(double lo, double hi) {
  if (!(lo < hi)) {
    throw Error(ErrorCode::kInvalidArgument, "interval requires lower < upper");
  }
  return {lo, hi, std::isfinite(lo), std::isfinite(hi)};
}

bool SupportInterval::contains(double x) const noexcept {
  const bool above = lower_closed ? x >= lower : x > lower;
  const bool below = upper_closed ? x <= upper : x < upper;
  return above && below;
}

bool SupportInterval::lower_finite() const noexcept {
  return std::isfinite(lower);
}

bool SupportInterval::upper_finite() const noexcept {
  return std::isfinite(upper);
}

SupportInterval SupportInterval::intersect(const SupportInterval& other) const {
  SupportInterval out;
  if (lower > other.lower) {
    out.lower = lower;
    out.lower_closed = lower_closed;
  } else if (other.lower > lower) {
    out.lower = other.lower;
    out.lower_closed = other.lower_closed;
  } else {
    out.lower = lower;
    out.lower_closed = lower_closed && other.lower_closed;
  }
  if (upper < other.upper) {
    out.upper = upper;
    out.upper_closed = upper_closed;
  } else if (other.upper < upper) {
    out.upper = other.upper;
    out.upper_closed = other.upper_closed;
  } else {
    out.upper = upper;
    out.upper_closed = upper_closed && other.upper_closed;
  }
  if (!(out.lower < out.upper)) {
    throw Error(ErrorCode::kConfig, "interval intersection is empty");
  }
  return out;
}

namespace qkernel {
namespace {

[[noreturn]] void throw_pole(double z, const QIndex& q) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "q_exp: argument z=" << z << " is at or past the pole z=1/(q-1)="
      << 1.0 / (q.value() - 1.0) << " for q=" << q.value();
  throw Error(ErrorCode::kDomain, msg.str());
}

// log e_q(z) for z inside the support.
double log_q_exp(double z, const QIndex& q) {
  const double w = q.one_minus_q();
  return std::log1p(w * z) / w;
}

}  // namespace

double q_exp(double z, const QIndex& q) {
  if (std::isnan(z)) {
    throw Error(ErrorCode::kInvalidArgument, "q_exp: z is NaN");
  }
  if (q.is_classical()) return std::exp(z);
  if (q_base(z, q) > 0.0) return std::exp(log_q_exp(z, q));
  if (q.value() < 1.0) return 0.0;
  throw_pole(z, q);
}

double q_log(double y, const QIndex& q) {
  if (!(y > 0.0)) {
    throw Error(ErrorCode::kDomain, "q_log: argument must be positive");
  }
  if (q.is_classical()) return std::log(y);
  const double w = q.one_minus_q();
  return std::expm1(w * std::log(y)) / w;
}

double q_exp_deriv(double z, const QIndex& q) {
  return q_exp_pow(z, q, q.value());
}

double q_exp_pow(double z, const QIndex& q, double power) {
  if (std::isnan(z)) {
    throw Error(ErrorCode::kInvalidArgument, "q_exp: z is NaN");
  }
  if (q.is_classical()) return std::exp(power * z);
  if (q_base(z, q) > 0.0) return std::exp(power * log_q_exp(z, q));
  if (q.value() < 1.0) {
    if (power > 0.0) return 0.0;
    if (power == 0.0) return 1.0;
    return std::numeric_limits<double>::infinity();
  }
  throw_pole(z, q);
}

}  // namespace qkernel
}  // namespace qbridge
