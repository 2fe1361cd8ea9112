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
#include <cstdlib>
#include <numbers>

#include <gtest/gtest.h>

#include "qbridge/error.hpp"
#include "qbridge/quadrature.hpp"

namespace qbridge {
namespace {

const SupportInterval kHalfLine{0.0, SupportInterval::kInf, true, false};

TEST(Integrate, Polynomial) {
  EXPECT_NEAR(integrate([](double x) { return x; },
                        SupportInterval::closed(0.0, 1.0), {}),
              0.5, 1e-14);
}

TEST(Integrate, ExponentialHalfLine) {
  EXPECT_NEAR(integrate([](double u) { return std::exp(-u); }, kHalfLine, {}),
              1.0, 1e-12);
}

TEST(Integrate, QExponentialOnFiniteSupport) {
  // Antiderivative -(2/3)(1 - x/2)^3.
  const double v = integrate(
      [](double x) { return (1 - x / 2) * (1 - x / 2); },
      SupportInterval{0.0, 2.0, true, false}, {});
  EXPECT_NEAR(v, 2.0 / 3.0, 1e-13);
}

TEST(Integrate, GaussianWholeLine) {
  const double v = integrate([](double x) { return std::exp(-x * x); },
                             SupportInterval::whole_line(), {});
  EXPECT_NEAR(v, std::sqrt(std::numbers::pi), 1e-12);
}

TEST(Integrate, LowerHalfLine) {
  const double v = integrate([](double x) { return std::exp(2 * x); },
                             SupportInterval{-SupportInterval::kInf, 0.0, false, true}, {});
  EXPECT_NEAR(v, 0.5, 1e-12);
}

TEST(Integrate, SlowAlgebraicTail) {
  // integral_0^inf (1 + 0.8 x)^(-1.25) dx = 1 / (0.8 * 0.25) = 5.
  const double v = integrate(
      [](double x) { return std::pow(1 + 0.8 * x, -1.25); }, kHalfLine, {});
  EXPECT_NEAR(v, 5.0, 5e-9);
}

TEST(Integrate, DivergentTailFails) {
  EXPECT_THROW(integrate([](double x) { return 1.0 / (1.0 + x); }, kHalfLine, {}),
               QuadratureError);
}

TEST(Integrate, NonFiniteIntegrandFails) {
  EXPECT_THROW(integrate([](double) { return std::nan(""); },
                         SupportInterval::closed(0.0, 1.0), {}),
               QuadratureError);
}

TEST(Integrate, SubdivisionBudgetCarriesEstimate) {
  QuadratureSpec tight;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 1e-30;
  tight.max_subdivisions = 16;
  try {
    integrate([](double x) { return std::sqrt(x) * std::sin(40 * x); },
              SupportInterval::closed(0.0, 10.0), tight);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_TRUE(std::isfinite(e.estimate()));
  }
}

TEST(IntegrateMany, SharesPartition) {
  const auto r = integrate_many(
      [](double x, std::span<double> out) {
        out[0] = x * std::exp(-x);
        out[1] = std::exp(-x);
      },
      2, kHalfLine, {});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].value, 1.0, 1e-12);
  EXPECT_NEAR(r[1].value, 1.0, 1e-12);
  EXPECT_EQ(r[0].subdivisions, r[1].subdivisions);
}

TEST(QuadratureSpec, Validation) {
  QuadratureSpec bad;
  bad.max_subdivisions = 4;
  EXPECT_THROW(bad.validate(), Error);
  bad = {};
  bad.tail_mass_cut = 1e-6;
  EXPECT_THROW(bad.validate(), Error);
  bad = {};
  bad.rel_tol = 0.0;
  bad.abs_tol = 0.0;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(QuadratureSpec, Tightened) {
  const QuadratureSpec t = QuadratureSpec{}.tightened(10.0);
  EXPECT_DOUBLE_EQ(t.rel_tol, 1e-11);
}

TEST(QuadratureSpec, EnvironmentOverride) {
  ::setenv("QBRIDGE_QUAD_RTOL", "1e-8", 1);
  EXPECT_DOUBLE_EQ(QuadratureSpec::from_environment().rel_tol, 1e-8);
  ::setenv("QBRIDGE_QUAD_RTOL", "garbage", 1);
  EXPECT_THROW(QuadratureSpec::from_environment(), Error);
  ::unsetenv("QBRIDGE_QUAD_RTOL");
  EXPECT_DOUBLE_EQ(QuadratureSpec::from_environment().rel_tol, 1e-10);
}

}  // namespace
}  // namespace qbridge
