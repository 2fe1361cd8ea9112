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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qbridge/error.hpp"
#include "qbridge/qkernel.hpp"

namespace qbridge {
namespace {

using qkernel::q_exp;
using qkernel::q_exp_deriv;
using qkernel::q_log;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

TEST(QExp, ClassicalIsExp) {
  for (double z : {-3.0, -0.5, 0.0, 0.25, 2.0}) {
    EXPECT_DOUBLE_EQ(q_exp(z, QIndex(1.0)), std::exp(z));
  }
}

TEST(QExp, ZeroMapsToOne) {
  for (double q : {0.2, 0.5, 1.0, 1.5, 2.5, 3.0}) {
    EXPECT_DOUBLE_EQ(q_exp(0.0, QIndex(q)), 1.0);
  }
}

TEST(QExp, HalfIndexValues) {
  // (1 + 0.5 * (-1))^2
  EXPECT_DOUBLE_EQ(q_exp(-1.0, QIndex(0.5)), 0.25);
  // 1 + 0.5 * (-3) < 0: cutoff.
  EXPECT_EQ(q_exp(-3.0, QIndex(0.5)), 0.0);
}

TEST(QExp, PoleIsDomainError) {
  // q = 1.5 has its pole at z = 1 / (q - 1) = 2.
  EXPECT_EQ(code_of([] { q_exp(2.0, QIndex(1.5)); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { q_exp(3.0, QIndex(1.5)); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { q_exp_deriv(2.5, QIndex(1.5)); }), ErrorCode::kDomain);
}

TEST(QExp, NonFiniteIndexRejected) {
  EXPECT_EQ(code_of([] { QIndex(std::nan("")); }),
            ErrorCode::kInvalidArgument);
}

TEST(QLog, Values) {
  for (double q : {0.3, 1.0, 1.7}) EXPECT_DOUBLE_EQ(q_log(1.0, QIndex(q)), 0.0);
  // (0.25^0.5 - 1) / 0.5
  EXPECT_NEAR(q_log(0.25, QIndex(0.5)), -1.0, 1e-15);
  EXPECT_NEAR(q_log(q_exp(0.7, QIndex(1.3)), QIndex(1.3)), 0.7, 1e-12);
}

TEST(QLog, NonPositiveIsDomainError) {
  EXPECT_EQ(code_of([] { q_log(0.0, QIndex(0.5)); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { q_log(-1.0, QIndex(1.5)); }), ErrorCode::kDomain);
}

TEST(QExpDeriv, ClassicalIsExp) {
  EXPECT_DOUBLE_EQ(q_exp_deriv(0.3, QIndex(1.0)), std::exp(0.3));
}

TEST(QExpDeriv, MatchesCentralDifference) {
  const QIndex q(1.5);
  const double h = 1e-6;
  const double fd = (q_exp(-0.3 + h, q) - q_exp(-0.3 - h, q)) / (2 * h);
  EXPECT_NEAR(q_exp_deriv(-0.3, q) / fd, 1.0, 1e-6);
}

TEST(QExpDeriv, ZeroPastCutoff) {
  EXPECT_EQ(q_exp_deriv(-5.0, QIndex(0.5)), 0.0);
}

TEST(QExp, RandomRoundTrip) {
  std::mt19937_64 rng(20261017);
  std::uniform_real_distribution<double> qd(0.2, 1.9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  while (checked < 200) {
    const double qv = qd(rng);
    if (std::fabs(qv - 1.0) < 1e-6) continue;
    const QIndex q(qv);
    // Keep 1 + (1-q) z inside [0.05, 3] so z is in the support.
    const double base = 0.05 + 2.95 * unit(rng);
    const double z = (base - 1.0) / q.one_minus_q();
    if (std::fabs(z) > 30.0) continue;
    EXPECT_NEAR(q_log(q_exp(z, q), q), z, 1e-11) << "q=" << qv << " z=" << z;
    ++checked;
  }
}

TEST(QExp, DerivativeIdentityOnGrid) {
  for (double qv : {0.5, 0.8, 1.3, 1.8}) {
    const QIndex q(qv);
    for (int i = 0; i <= 40; ++i) {
      const double z = -0.9 + 1.8 * i / 40.0;
      if (qkernel::q_base(z, q) < 0.05) continue;
      const double h = 1e-6;
      const double fd = (q_exp(z + h, q) - q_exp(z - h, q)) / (2 * h);
      EXPECT_NEAR(q_exp_deriv(z, q) / fd, 1.0, 1e-6) << "q=" << qv << " z=" << z;
    }
  }
}

TEST(QExp, ClassicalContinuity) {
  for (double qv : {1.0 - 1e-8, 1.0 + 1e-8}) {
    for (int i = 0; i <= 20; ++i) {
      const double z = -5.0 + 0.5 * i;
      EXPECT_LT(std::fabs(q_exp(z, QIndex(qv)) - std::exp(z)),
                1e-6 * std::exp(z));
    }
  }
}

TEST(QExp, NonNegativeAndIncreasing) {
  for (double qv : {0.3, 0.5, 0.9, 1.0, 1.2, 1.9}) {
    const QIndex q(qv);
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
      const double z = -4.0 + 0.0199 * i;
      if (qv > 1.0 && qkernel::q_base(z, q) <= 0.0) break;
      const double v = q_exp(z, q);
      EXPECT_GE(v, 0.0);
      if (v > 0.0 && prev > 0.0) {
        EXPECT_GT(v, prev) << "q=" << qv << " z=" << z;
      }
      prev = v;
    }
  }
}

}  // namespace
}  // namespace qbridge
