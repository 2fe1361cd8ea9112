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

#include "qbridge/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <sstream>
#include <string>

#include "qbridge/error.hpp"

namespace qbridge {
namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

enum class Mapping { kFinite, kUpper, kLower, kBoth };

// Maps the integration variable t of the working interval onto x and
// supplies dx/dt. Infinite ends go through x = anchor + sinh(v) with a
// rational map for v, so algebraic tails decay exponentially in v.
struct Substitution {
  Mapping mapping = Mapping::kFinite;
  double anchor = 0.0;

  double v(double t) const {
    return mapping == Mapping::kBoth ? t / (1.0 - t * t) : t / (1.0 - t);
  }

  double dvdt(double t) const {
    if (mapping == Mapping::kBoth) {
      const double d = 1.0 - t * t;
      return (1.0 + t * t) / (d * d);
    }
    return 1.0 / ((1.0 - t) * (1.0 - t));
  }

  double x(double t) const {
    switch (mapping) {
      case Mapping::kFinite: return t;
      case Mapping::kUpper: return anchor + std::sinh(v(t));
      case Mapping::kLower: return anchor - std::sinh(v(t));
      case Mapping::kBoth: return std::sinh(v(t));
    }
    return t;
  }

  double dxdt(double t) const {
    if (mapping == Mapping::kFinite) return 1.0;
    return std::cosh(v(t)) * dvdt(t);
  }

  // A finite stand-in for x(t) once sinh overflows.
  double far_point(double t) const {
    constexpr double kFar = 1e300;
    switch (mapping) {
      case Mapping::kFinite: return t;
      case Mapping::kUpper: return anchor + kFar;
      case Mapping::kLower: return anchor - kFar;
      case Mapping::kBoth: return t < 0.0 ? -kFar : kFar;
    }
    return t;
  }
};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> value;
  std::vector<double> error;
  bool touches_infinity = false;
  double priority = 0.0;
};

struct SegmentOrder {
  bool operator()(const Segment& lhs, const Segment& rhs) const {
    return lhs.priority < rhs.priority;
  }
};

class AdaptiveIntegrator {
 public:
  AdaptiveIntegrator(const VectorIntegrand& f, std::size_t dims,
                     const SupportInterval& interval,
                     const QuadratureSpec& quad)
      : f_(f), dims_(dims), quad_(quad), scratch_(dims) {
    quad.validate();
    if (dims == 0) {
      throw Error(ErrorCode::kInvalidArgument, "integrate: zero components");
    }
    if (std::isnan(interval.lower) || std::isnan(interval.upper) ||
        !(interval.lower < interval.upper)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "integrate: interval requires lower < upper");
    }
    const bool lo_inf = !interval.lower_finite();
    const bool hi_inf = !interval.upper_finite();
    if (lo_inf && hi_inf) {
      sub_.mapping = Mapping::kBoth;
      t_lo_ = -1.0;
      t_hi_ = 1.0;
    } else if (hi_inf) {
      sub_.mapping = Mapping::kUpper;
      sub_.anchor = interval.lower;
      t_lo_ = 0.0;
      t_hi_ = 1.0;
    } else if (lo_inf) {
      sub_.mapping = Mapping::kLower;
      sub_.anchor = interval.upper;
      t_lo_ = 0.0;
      t_hi_ = 1.0;
    } else {
      t_lo_ = interval.lower;
      t_hi_ = interval.upper;
    }
  }

  std::vector<QuadratureResult> run() {
    std::priority_queue<Segment, std::vector<Segment>, SegmentOrder> queue;
    std::vector<double> total(dims_, 0.0);
    std::vector<double> total_err(dims_, 0.0);
    std::vector<double> frozen_err(dims_, 0.0);
    std::vector<double> accepted(dims_, 0.0);

    constexpr int kInitialPieces = 8;
    const double width = (t_hi_ - t_lo_) / kInitialPieces;
    for (int i = 0; i < kInitialPieces; ++i) {
      const double a = t_lo_ + i * width;
      const double b = (i + 1 == kInitialPieces) ? t_hi_ : a + width;
      Segment s = evaluate(a, b);
      accumulate(s, total, total_err, +1.0);
      queue.push(std::move(s));
    }
    int subdivisions = kInitialPieces;

    auto converged = [&] {
      for (std::size_t k = 0; k < dims_; ++k) {
        const double tol =
            std::max(quad_.abs_tol, quad_.rel_tol * std::fabs(total[k]));
        if (total_err[k] + frozen_err[k] > tol) return false;
      }
      return true;
    };

    while (!converged() && !queue.empty()) {
      if (subdivisions >= quad_.max_subdivisions) {
        fail(total, total_err, frozen_err, "maximum subdivisions reached");
      }
      Segment worst = queue.top();
      queue.pop();
      accumulate(worst, total, total_err, -1.0);

      const double mid = 0.5 * (worst.a + worst.b);
      const double scale = std::max({std::fabs(worst.a), std::fabs(worst.b),
                                     std::numeric_limits<double>::min()});
      if (!(mid > worst.a && mid < worst.b) ||
          (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() *
                                    scale) {
        // Cannot split further: keep the estimate, carry its error.
        for (std::size_t k = 0; k < dims_; ++k) {
          total[k] += worst.value[k];
          accepted[k] += worst.value[k];
          frozen_err[k] += worst.error[k];
        }
        continue;
      }

      Segment left = evaluate(worst.a, mid);
      Segment right = evaluate(mid, worst.b);
      subdivisions += 1;
      for (Segment* s : {&left, &right}) {
        if (s->touches_infinity && negligible_tail(*s, total)) {
          for (std::size_t k = 0; k < dims_; ++k) {
            total[k] += s->value[k];
            accepted[k] += s->value[k];
          }
          continue;
        }
        accumulate(*s, total, total_err, +1.0);
        queue.push(std::move(*s));
      }
    }

    if (!converged()) {
      fail(total, total_err, frozen_err, "error target not reached");
    }

    // Re-sum from the final partition; the running totals drift.
    std::vector<double> exact = accepted;
    std::vector<double> exact_err = frozen_err;
    while (!queue.empty()) {
      const Segment& s = queue.top();
      for (std::size_t k = 0; k < dims_; ++k) {
        exact[k] += s.value[k];
        exact_err[k] += s.error[k];
      }
      queue.pop();
    }
    std::vector<QuadratureResult> out(dims_);
    for (std::size_t k = 0; k < dims_; ++k) {
      out[k].value = exact[k];
      out[k].error = exact_err[k];
      out[k].subdivisions = subdivisions;
    }
    return out;
  }

 private:
  Segment evaluate(double a, double b) {
    Segment s;
    s.a = a;
    s.b = b;
    s.value.assign(dims_, 0.0);
    s.error.assign(dims_, 0.0);
    s.touches_infinity = sub_.mapping != Mapping::kFinite &&
                         (b == t_hi_ || (sub_.mapping == Mapping::kBoth &&
                                         a == t_lo_));

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::vector<double> kronrod(dims_, 0.0);
    std::vector<double> gauss(dims_, 0.0);

    for (std::size_t j = 0; j < kKronrodNodes.size(); ++j) {
      const double offset = half * kKronrodNodes[j];
      const int copies = (j + 1 == kKronrodNodes.size()) ? 1 : 2;
      for (int side = 0; side < copies; ++side) {
        const double t = side == 0 ? center - offset : center + offset;
        sample(t);
        for (std::size_t k = 0; k < dims_; ++k) {
          kronrod[k] += kKronrodWeights[j] * scratch_[k];
          if (j % 2 == 1) gauss[k] += kGaussWeights[j / 2] * scratch_[k];
        }
      }
    }

    double worst = 0.0;
    for (std::size_t k = 0; k < dims_; ++k) {
      s.value[k] = kronrod[k] * half;
      s.error[k] = std::fabs((kronrod[k] - gauss[k]) * half);
      worst = std::max(worst, s.error[k]);
    }
    s.priority = worst;
    return s;
  }

  void sample(double t) {
    const double x = sub_.x(t);
    const double w = sub_.dxdt(t);
    std::fill(scratch_.begin(), scratch_.end(), 0.0);
    if (!std::isfinite(x) || !std::isfinite(w)) {
      // Past the largest representable x the integrand is dropped, which is
      // only sound if it has already decayed faster than 1/x.
      const double far = sub_.far_point(t);
      f_(far, scratch_);
      for (double v : scratch_) {
        if (!(std::fabs(v) * std::fabs(far) <= quad_.tail_mass_cut)) {
          throw QuadratureError(
              "integrate: integrand does not decay faster than 1/x",
              std::numeric_limits<double>::quiet_NaN(),
              std::numeric_limits<double>::infinity());
        }
      }
      std::fill(scratch_.begin(), scratch_.end(), 0.0);
      return;
    }
    f_(x, scratch_);
    for (double& v : scratch_) {
      if (v == 0.0) continue;
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "integrate: integrand is not finite at x=" << x;
        throw QuadratureError(msg.str(), std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::infinity());
      }
      v *= w;
    }
  }

  bool negligible_tail(const Segment& s, const std::vector<double>& total) const {
    for (std::size_t k = 0; k < dims_; ++k) {
      const double mass = std::fabs(s.value[k]) + s.error[k];
      if (mass >= quad_.tail_mass_cut * std::max(1.0, std::fabs(total[k]))) {
        return false;
      }
    }
    return true;
  }

  void accumulate(const Segment& s, std::vector<double>& total,
                  std::vector<double>& total_err, double sign) const {
    for (std::size_t k = 0; k < dims_; ++k) {
      total[k] += sign * s.value[k];
      total_err[k] += sign * s.error[k];
      if (total_err[k] < 0.0) total_err[k] = 0.0;
    }
  }

  [[noreturn]] void fail(const std::vector<double>& total,
                         const std::vector<double>& total_err,
                         const std::vector<double>& frozen_err,
                         const std::string& why) const {
    std::size_t k_worst = 0;
    double worst = -1.0;
    for (std::size_t k = 0; k < dims_; ++k) {
      const double e = total_err[k] + frozen_err[k];
      if (e > worst) {
        worst = e;
        k_worst = k;
      }
    }
    std::ostringstream msg;
    msg.precision(6);
    msg << "integrate: " << why << " (estimate " << total[k_worst]
        << ", error bound " << worst << ", limit " << quad_.max_subdivisions
        << " subdivisions)";
    throw QuadratureError(msg.str(), total[k_worst], worst);
  }

  const VectorIntegrand& f_;
  std::size_t dims_;
  QuadratureSpec quad_;
  Substitution sub_;
  double t_lo_ = 0.0;
  double t_hi_ = 0.0;
  std::vector<double> scratch_;
};

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadrature tolerances must be positive");
  }
  if (max_subdivisions < 16) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadrature max_subdivisions must be at least 16");
  }
  if (!(tail_mass_cut > 0.0) || tail_mass_cut > 1e-10) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadrature tail_mass_cut must lie in (0, 1e-10]");
  }
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec out = *this;
  out.rel_tol /= factor;
  out.abs_tol /= factor;
  return out;
}

QuadratureSpec QuadratureSpec::from_environment() {
  QuadratureSpec quad;
  if (const char* env = std::getenv("QBRIDGE_QUAD_RTOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw Error(ErrorCode::kConfig,
                  std::string("QBRIDGE_QUAD_RTOL is not a positive number: ") +
                      env);
    }
    quad.rel_tol = v;
  }
  return quad;
}

std::vector<QuadratureResult> integrate_many(const VectorIntegrand& f,
                                             std::size_t dims,
                                             const SupportInterval& interval,
                                             const QuadratureSpec& quad) {
  AdaptiveIntegrator integrator(f, dims, interval, quad);
  return integrator.run();
}

QuadratureResult integrate_detailed(const Integrand& f,
                                    const SupportInterval& interval,
                                    const QuadratureSpec& quad) {
  const VectorIntegrand wrapped = [&f](double x, std::span<double> out) {
    out[0] = f(x);
  };
  return integrate_many(wrapped, 1, interval, quad).front();
}

double integrate(const Integrand& f, const SupportInterval& interval,
                 const QuadratureSpec& quad) {
  return integrate_detailed(f, interval, quad).value;
}

}  // namespace qbridge
