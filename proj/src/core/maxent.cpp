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

#include "qbridge/maxent.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "qbridge/error.hpp"

namespace qbridge::maxent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxShannonConstraints = 3;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

const char* end_name(int direction) {
  return direction > 0 ? "x -> +inf" : "x -> -inf";
}

// Smallest lambda.h over a coarse probe set of the domain. Used as an
// exponent shift so exp(-(s - shift)) stays representable.
double exponent_shift(const Polynomial& s, const SupportInterval& domain) {
  double best = kInf;
  auto probe = [&](double x) {
    if (std::isfinite(x) && domain.contains(x)) best = std::min(best, s(x));
  };
  probe(domain.lower);
  probe(domain.upper);
  probe(std::clamp(0.0, domain.lower, domain.upper));
  constexpr int kProbes = 128;
  for (int i = 1; i < kProbes; ++i) {
    const double t = static_cast<double>(i) / kProbes;
    double x;
    if (domain.bounded()) {
      x = domain.lower + t * (domain.upper - domain.lower);
    } else if (domain.lower_finite()) {
      x = domain.lower + t / (1.0 - t);
    } else if (domain.upper_finite()) {
      x = domain.upper - t / (1.0 - t);
    } else {
      const double v = 2.0 * t - 1.0;
      x = v / (1.0 - v * v);
    }
    probe(x);
  }
  return std::isfinite(best) ? best : 0.0;
}

// Moments of exp(-s) for the observables of cs on domain.
struct Moments {
  double log_z = 0.0;
  std::vector<double> mean;
  std::vector<double> cov;  // row-major M x M
};

Moments moments(const ConstraintSet& cs, const SupportInterval& domain,
                const QuadratureSpec& quad) {
  const std::size_t m = cs.size();
  const Polynomial& s = cs.combined();
  const double shift = exponent_shift(s, domain);
  const std::size_t dims = 1 + m + m * m;
  const auto& hs = cs.constraints();
  const VectorIntegrand f = [&](double x, std::span<double> out) {
    const double w = std::exp(-(s(x) - shift));
    out[0] = w;
    if (w == 0.0) return;
    for (std::size_t i = 0; i < m; ++i) {
      const double hi = hs[i].value(x);
      out[1 + i] = w * hi;
      for (std::size_t j = 0; j < m; ++j) {
        out[1 + m + i * m + j] = w * hi * hs[j].value(x);
      }
    }
  };
  const auto r = integrate_many(f, dims, domain, quad);
  const double z = r[0].value;
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::kNonNormalizable,
                "Shannon normalization integral is not positive and finite");
  }
  Moments out;
  out.log_z = shift + std::log(z);
  out.mean.resize(m);
  out.cov.resize(m * m);
  for (std::size_t i = 0; i < m; ++i) out.mean[i] = r[1 + i].value / z;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out.cov[i * m + j] =
          r[1 + m + i * m + j].value / z - out.mean[i] * out.mean[j];
    }
  }
  return out;
}

bool shannon_normalizable(const ConstraintSet& cs,
                          const SupportInterval& domain) {
  try {
    require_shannon_normalizable(cs, domain);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Solves a x = b in place for M <= 3 by Gaussian elimination with partial
// pivoting. Returns false on a singular matrix.
bool solve_small(std::vector<double> a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r * n + col]) > std::fabs(a[pivot * n + col])) pivot = r;
    }
    if (!(std::fabs(a[pivot * n + col]) > 1e-300)) return false;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] / a[col * n + col];
      for (std::size_t k = col; k < n; ++k) a[r * n + k] -= factor * a[col * n + k];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i * n + k] * b[k];
    b[i] = acc / a[i * n + i];
  }
  return true;
}

// Infimum and supremum of h over the domain, from finite endpoints, limits
// at infinity and a dense probe of the interior.
std::pair<double, double> observable_range(const ConstraintFn& h,
                                           const SupportInterval& domain) {
  const Polynomial& p = h.as_polynomial();
  double lo = kInf;
  double hi = -kInf;
  auto take = [&](double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (int dir : {-1, 1}) {
    const double end = dir < 0 ? domain.lower : domain.upper;
    if (std::isfinite(end)) {
      take(p(end));
    } else if (p.degree() == 0) {
      take(p(0.0));
    } else {
      take(p.sign_at_infinity(dir) * kInf);
    }
  }
  const double a = std::max(domain.lower, -1e6);
  const double b = std::min(domain.upper, 1e6);
  constexpr int kProbes = 20000;
  for (int i = 0; i <= kProbes; ++i) {
    take(p(a + (b - a) * i / kProbes));
  }
  return {lo, hi};
}

std::vector<double> newton_solve(const ConstraintSet& cs,
                                 const SupportInterval& domain,
                                 const QuadratureSpec& quad) {
  const std::size_t m = cs.size();
  const std::vector<double>& target = cs.targets();

  // Normalizable starting point.
  std::vector<std::vector<double>> starts;
  starts.emplace_back(m, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> v(m, 0.0);
      v[i] = sign;
      starts.push_back(v);
    }
  }
  std::vector<double> lambda;
  for (const auto& s : starts) {
    if (shannon_normalizable(cs.with_multipliers(s), domain)) {
      lambda = s;
      break;
    }
  }
  if (lambda.empty()) {
    throw Error(ErrorCode::kFeasibility,
                "no multiplier vector makes exp(-lambda.h) normalizable on "
                "the domain");
  }

  auto dual = [&](const Moments& mo, const std::vector<double>& l) {
    double acc = mo.log_z;
    for (std::size_t i = 0; i < m; ++i) acc += l[i] * target[i];
    return acc;
  };

  std::ostringstream trace;
  trace.precision(12);
  const double grad_tol = std::max(10.0 * quad.rel_tol, 1e-13);
  Moments mo = moments(cs.with_multipliers(lambda), domain, quad);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> grad(m);
    bool small = true;
    for (std::size_t i = 0; i < m; ++i) {
      grad[i] = target[i] - mo.mean[i];
      if (std::fabs(grad[i]) > grad_tol * std::max(1.0, std::fabs(target[i]))) {
        small = false;
      }
    }
    trace << "\n  iter " << iter << ": lambda[0]=" << lambda[0]
          << " |grad|=" << std::fabs(grad[0]);
    if (small) return lambda;

    std::vector<double> step(m);
    for (std::size_t i = 0; i < m; ++i) step[i] = -grad[i];
    if (!solve_small(mo.cov, step)) {
      throw Error(ErrorCode::kSolver,
                  "Shannon Newton step: singular moment covariance" +
                      trace.str());
    }
    double slope = 0.0;
    for (std::size_t i = 0; i < m; ++i) slope += grad[i] * step[i];

    const double d0 = dual(mo, lambda);
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      std::vector<double> trial(m);
      for (std::size_t i = 0; i < m; ++i) trial[i] = lambda[i] + t * step[i];
      const ConstraintSet trial_cs = cs.with_multipliers(trial);
      if (!shannon_normalizable(trial_cs, domain)) continue;
      Moments trial_mo;
      try {
        trial_mo = moments(trial_cs, domain, quad);
      } catch (const Error&) {
        continue;
      }
      if (dual(trial_mo, trial) <= d0 + 1e-4 * t * slope + 1e-14 * std::fabs(d0)) {
        lambda = std::move(trial);
        mo = std::move(trial_mo);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    double step_norm = 0.0;
    double lambda_norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      step_norm = std::max(step_norm, std::fabs(t * step[i]));
      lambda_norm = std::max(lambda_norm, std::fabs(lambda[i]));
    }
    if (step_norm <= 1e-14 * std::max(1.0, lambda_norm)) return lambda;
  }
  throw Error(ErrorCode::kSolver,
              "Shannon Newton iteration stagnated; trace:" + trace.str());
}

double bisection_solve(const ConstraintSet& cs, const SupportInterval& domain,
                       const QuadratureSpec& quad) {
  const double target = cs.targets().front();
  auto mean_at = [&](double l) {
    return moments(cs.with_multipliers({l}), domain, quad).mean.front();
  };
  auto allowed = [&](double l) {
    return shannon_normalizable(cs.with_multipliers({l}), domain);
  };
  const bool pos = allowed(1.0);
  const bool neg = allowed(-1.0);
  if (!pos && !neg) {
    throw Error(ErrorCode::kFeasibility,
                "no multiplier makes exp(-lambda h) normalizable");
  }
  // The mean is decreasing in lambda.
  double lo;
  double hi;
  if (pos && neg) {
    lo = -1.0;
    hi = 1.0;
    for (int k = 0; k < 200 && mean_at(lo) <= target; ++k) lo *= 2.0;
    for (int k = 0; k < 200 && mean_at(hi) >= target; ++k) hi *= 2.0;
  } else {
    const double sign = pos ? 1.0 : -1.0;
    double a = sign;
    const bool need_larger = (mean_at(a) > target) == (sign > 0.0);
    double b = a;
    for (int k = 0; k < 400; ++k) {
      b = need_larger ? b * 2.0 : b * 0.5;
      const double mb = mean_at(b);
      if ((mb - target) * (mean_at(a) - target) <= 0.0) break;
      a = b;
    }
    lo = std::min(a, b);
    hi = std::max(a, b);
  }
  double f_lo = mean_at(lo) - target;
  double f_hi = mean_at(hi) - target;
  if (f_lo < 0.0 || f_hi > 0.0) {
    throw Error(ErrorCode::kSolver,
                "Shannon bisection could not bracket the multiplier");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi ||
        hi - lo <= 1e-15 * std::max(1.0, std::fabs(mid))) {
      break;
    }
    const double f_mid = mean_at(mid) - target;
    if (f_mid > 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double ShannonSolution::density(double u) const {
  if (!domain.contains(u)) return 0.0;
  return std::exp(-mu - cs.dot(u));
}

double TsallisSolution::density(double x) const {
  if (!support.contains(x)) return 0.0;
  return normalization * qkernel::q_exp(-cs.dot(x), q);
}

void require_shannon_normalizable(const ConstraintSet& cs,
                                  const SupportInterval& domain) {
  const Polynomial& s = cs.combined();
  for (int dir : {-1, 1}) {
    const double end = dir < 0 ? domain.lower : domain.upper;
    if (std::isfinite(end)) continue;
    if (s.degree() < 1 || s.sign_at_infinity(dir) <= 0) {
      throw Error(ErrorCode::kNonNormalizable,
                  std::string("exp(-lambda.h) does not decay as ") +
                      end_name(dir) + "; the density is not normalizable");
    }
  }
}

void require_tsallis_normalizable(const QIndex& q, const ConstraintSet& cs,
                                  const SupportInterval& region) {
  if (q.is_classical()) {
    require_shannon_normalizable(cs, region);
    return;
  }
  const Polynomial& s = cs.combined();
  for (int dir : {-1, 1}) {
    const double end = dir < 0 ? region.lower : region.upper;
    if (std::isfinite(end)) continue;
    const int d = s.degree();
    // On an unbounded support end 1 - (1-q) s stays positive, so e_q
    // behaves like |x|^{d/(1-q)} there.
    const double exponent = d / q.one_minus_q();
    if (d < 1 || q.value() < 1.0 || !(-exponent > 1.0)) {
      std::ostringstream msg;
      msg << "e_q(-lambda.h) is not normalizable as " << end_name(dir)
          << ": its tail behaves like |x|^" << fmt(exponent)
          << " (an exponent below -1 is required)";
      throw Error(ErrorCode::kNonNormalizable, msg.str());
    }
  }
}

ShannonSolution shannon_from_multipliers(const ConstraintSet& cs,
                                         const SupportInterval& domain,
                                         const QuadratureSpec& quad) {
  require_shannon_normalizable(cs, domain);
  const Moments mo = moments(cs, domain, quad);
  return ShannonSolution{mo.log_z, cs.with_targets(mo.mean), domain};
}

ShannonSolution solve_shannon(const ConstraintSet& cs,
                              const SupportInterval& domain,
                              const QuadratureSpec& quad) {
  quad.validate();
  if (!cs.has_targets()) {
    throw Error(ErrorCode::kInvalidArgument,
                "solve_shannon: target means are required");
  }
  if (cs.size() > kMaxShannonConstraints) {
    throw Error(ErrorCode::kInvalidArgument,
                "solve_shannon: at most 3 observables are supported");
  }
  if (cs.size() == 1) {
    const auto [lo, hi] = observable_range(cs.constraints().front(), domain);
    const double k = cs.targets().front();
    if (!(k > lo && k < hi)) {
      throw Error(ErrorCode::kFeasibility,
                  "target K=" + fmt(k) + " is not attainable: h ranges over (" +
                      fmt(lo) + ", " + fmt(hi) + ") on the domain");
    }
  }

  std::vector<double> lambda;
  try {
    lambda = newton_solve(cs, domain, quad);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSolver || cs.size() != 1) throw;
    lambda = {bisection_solve(cs, domain, quad)};
  }
  const ConstraintSet solved = cs.with_multipliers(lambda);
  const Moments mo = moments(solved, domain, quad);
  return ShannonSolution{mo.log_z, solved, domain};
}

TsallisSolution normalize_tsallis(const QIndex& q, const ConstraintSet& cs,
                                  const QuadratureSpec& quad,
                                  const SupportInterval& window,
                                  double anchor_x) {
  quad.validate();
  const SupportInterval region =
      transform::qexp_support(q, cs, anchor_x).intersect(window);
  require_tsallis_normalizable(q, cs, region);
  const double z = integrate(
      [&](double x) { return qkernel::q_exp(-cs.dot(x), q); }, region, quad);
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::kNonNormalizable,
                "Tsallis normalization integral is not positive and finite");
  }
  return TsallisSolution{1.0 / z, q, cs, region};
}

double second_moment(const TsallisSolution& t, const ConstraintFn& h,
                     const QuadratureSpec& quad) {
  try {
    return integrate(
        [&](double x) {
          const double p = t.density(x);
          if (p == 0.0) return 0.0;
          const double v = h.value(x);
          return p * v * v;
        },
        t.support, quad);
  } catch (const QuadratureError& e) {
    throw Error(ErrorCode::kNonNormalizable,
                "observable " + h.label() +
                    " is not square-integrable against the density: " +
                    e.what());
  }
}

TransportReport verify_transport(const ShannonSolution& s,
                                 const TsallisSolution& t,
                                 const TransformMap& map,
                                 const std::vector<double>& grid, double tol) {
  if (!s.cs.same_problem(t.cs) || !t.cs.same_problem(map.spec().cs) ||
      t.q.value() != map.spec().q.value()) {
    throw Error(ErrorCode::kConfig,
                "verify_transport: Shannon, Tsallis and transform must share "
                "observables, multipliers and q");
  }
  TransportReport report;
  report.grid = grid;
  report.profile.reserve(grid.size());

  const TransformSpec& spec = map.spec();
  const bool factor_check = t.cs.is_single_identity() &&
                            spec.anchor_x == 0.0 && spec.anchor_u == 0.0 &&
                            spec.c == 0.0;
  const double two_minus_q = 2.0 - t.q.value();
  double factor_max = 0.0;

  for (double x : grid) {
    if (!t.support.contains(x) || !map.support().interior(x)) {
      throw Error(ErrorCode::kDomain, "verify_transport: grid point x=" +
                                          fmt(x) +
                                          " lies outside the Tsallis support");
    }
    const double u = map.u(x);
    const double jac = map.J(x);
    const double lhs = t.density(x);
    const double rhs = s.density(u) * std::fabs(jac);
    const double residual = std::fabs(lhs - rhs);
    report.profile.push_back({x, residual});
    report.max_abs_residual = std::max(report.max_abs_residual, residual);

    if (factor_check) {
      const double lambda = t.cs.multipliers().front();
      const double closed = std::exp(-lambda * u) * jac -
                            two_minus_q * qkernel::q_exp(-lambda * x, t.q);
      factor_max = std::max(factor_max, std::fabs(closed));
    }
  }
  if (factor_check) report.max_factor_residual = factor_max;
  report.passed = report.max_abs_residual < tol;
  return report;
}

LinearODE LinearODE::from_transform(const TransformSpec& spec, double x0,
                                    double g0) {
  LinearODE ode;
  ode.x0 = x0;
  ode.g0 = g0;
  ode.drift = [spec](double x) {
    const double s = spec.cs.dot(x);
    return -qkernel::q_exp_pow(-s, spec.q, spec.q.value() - 1.0) *
           spec.cs.dot_derivative(x);
  };
  ode.forcing = [spec](double x) { return -spec.cs.dot_derivative(x); };
  return ode;
}

double LinearODE::integrating_factor(double x, const QuadratureSpec& quad) const {
  if (x == x0) return 1.0;
  const double lo = std::min(x, x0);
  const double hi = std::max(x, x0);
  const double integral = integrate(drift, SupportInterval::closed(lo, hi), quad);
  return std::exp(x > x0 ? integral : -integral);
}

std::vector<std::pair<double, double>> solve_ode_numeric(const LinearODE& ode,
                                                         double x_end,
                                                         int steps) {
  if (steps < 100) {
    throw Error(ErrorCode::kInvalidArgument,
                "solve_ode_numeric: at least 100 steps are required");
  }
  if (!std::isfinite(x_end) || x_end == ode.x0) {
    throw Error(ErrorCode::kInvalidArgument,
                "solve_ode_numeric: x_end must be finite and differ from x0");
  }
  auto rhs = [&ode](double x, double g) {
    return ode.forcing(x) - ode.drift(x) * g;
  };
  const double h = (x_end - ode.x0) / steps;
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  double g = ode.g0;
  out.emplace_back(ode.x0, g);
  for (int i = 0; i < steps; ++i) {
    const double x = ode.x0 + i * h;
    const double k1 = rhs(x, g);
    const double k2 = rhs(x + 0.5 * h, g + 0.5 * h * k1);
    const double k3 = rhs(x + 0.5 * h, g + 0.5 * h * k2);
    const double k4 = rhs(x + h, g + h * k3);
    g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(g) || std::fabs(g) > 1e12) {
      throw Error(ErrorCode::kInstability,
                  "solve_ode_numeric: solution blew up near x=" + fmt(x + h));
    }
    out.emplace_back(i + 1 == steps ? x_end : ode.x0 + (i + 1) * h, g);
  }
  return out;
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ks_distance: no samples");
  }
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n,
                  static_cast<double>(i + 1) / n - f});
  }
  return d;
}

SampleResult sample_and_test(const TsallisSolution& t, const TransformMap& map,
                             std::size_t n, std::uint64_t seed) {
  const double q = t.q.value();
  if (!(q > 0.0 && q < 2.0)) {
    throw Error(ErrorCode::kUnsupported,
                "sample_and_test: q=" + fmt(q) + " is outside (0, 2)");
  }
  if (!t.cs.is_single_identity() || !(t.cs.multipliers().front() > 0.0)) {
    throw Error(ErrorCode::kUnsupported,
                "sample_and_test: requires a single identity observable with "
                "lambda > 0");
  }
  if (n < 1000) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample_and_test: at least 1000 samples are required");
  }
  const TransformSpec& spec = map.spec();
  if (!t.cs.same_problem(spec.cs) || spec.q.value() != q || spec.c != 0.0 ||
      spec.anchor_x != 0.0 || spec.anchor_u != 0.0 || t.support.lower != 0.0) {
    throw Error(ErrorCode::kConfig,
                "sample_and_test: expects the Tsallis density on [0, edge) and "
                "a canonical map anchored at (0, 0) with the same q and lambda");
  }
  const double lambda = t.cs.multipliers().front();

  std::mt19937_64 rng(seed);
  SampleResult out;
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double uniform = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double u = -std::log1p(-uniform) / lambda;
    out.samples.push_back(map.x(u));
  }
  const QIndex& qi = t.q;
  out.ks_statistic = ks_distance(out.samples, [&](double x) {
    if (x <= 0.0) return 0.0;
    return 1.0 - qkernel::q_exp_pow(-lambda * x, qi, 2.0 - q);
  });
  return out;
}

}  // namespace qbridge::maxent
