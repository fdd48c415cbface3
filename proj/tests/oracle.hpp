#pragma once

// Test-only oracles: closed-form references and root finding, independent of
// the library's numerical integration path.

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>

namespace oracle {

// Bisection on a sign-changing bracket.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iterations = 200) {
  double f_lo = f(lo);
  if (f_lo == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  if (f_lo * f(hi) > 0.0) {
    throw std::invalid_argument("bisect: endpoints do not bracket a root");
  }
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (f_lo * f_mid < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Critically damped linear gesture, x(t) = T + (A + B t) e^(-w t).
struct CriticallyDamped {
  double w, A, B, target;

  CriticallyDamped(double k, double x0, double v0, double T)
      : w(std::sqrt(k)), A(x0 - T), B(v0 + std::sqrt(k) * (x0 - T)), target(T) {}

  double x(double t) const { return target + (A + B * t) * std::exp(-w * t); }
  double v(double t) const { return (B - w * (A + B * t)) * std::exp(-w * t); }
};

// For v0 = 0 the speed profile is |A| w^2 t e^(-w t): peaked at t = 1/w with
// value |A| w e^(-1). The landmarks below follow from u = w t substitution,
// which makes them stiffness-independent ratios.

// Roots u1 < 1 < u2 of u e^(1-u) = frac.
struct SpeedThresholdRoots {
  double u1, u2;
};

inline SpeedThresholdRoots speed_threshold_roots(double frac) {
  const auto f = [frac](double u) { return u * std::exp(1.0 - u) - frac; };
  return {bisect(f, 1e-12, 1.0), bisect(f, 1.0, 60.0)};
}

// Velocity-profile symmetry of the linear model at a given threshold
// fraction; independent of k, x0, and T.
inline double linear_symmetry(double frac) {
  const auto [u1, u2] = speed_threshold_roots(frac);
  return (1.0 - u1) / (u2 - u1);
}

// Time at which (1 + u) e^(-u) first drops to eps, scaled back to seconds.
inline double linear_settle_time(double k, double eps) {
  const auto f = [eps](double u) { return (1.0 + u) * std::exp(-u) - eps; };
  return bisect(f, 1e-9, 80.0) / std::sqrt(k);
}

// Least squares through the origin with its matching r^2 definition.
struct OriginFit {
  double slope;
  double r2;
};

inline OriginFit fit_through_origin(std::span<const double> xs,
                                    std::span<const double> ys) {
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += xs[i] * ys[i];
    sxx += xs[i] * xs[i];
    syy += ys[i] * ys[i];
  }
  const double slope = sxy / sxx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - slope * xs[i];
    ss_res += r * r;
  }
  return {slope, 1.0 - ss_res / syy};
}

}  // namespace oracle
