#pragma once

#include <optional>
#include <vector>

#include "gestdyn/scaling.hpp"

namespace gestdyn {

// One gesture's dynamics:
//
//   m x'' + b x' + k (x - T) - d' (x - T)^3 = 0,   b = 2 sqrt(m k)
//
// d is the raw user-facing ratio; it is never applied to the ODE directly
// but converted to d' through the configured scaling mode first.
struct GestureParams {
  double m = 1.0;        // mass, dimensionless
  double k = 2000.0;     // stiffness, 1/s^2
  double d = 0.0;        // nonlinear ratio
  ScalingMode scaling = ScalingMode::proportional;
  int n = 3;             // polynomial exponent used by the scaling laws
  std::optional<double> range;  // total movement range D, required for global scaling
  double target = 0.0;   // equilibrium position T
};

// Throws ParameterError when any invariant is violated. d has no upper
// bound under proportional scaling: the unstable regime is deliberately
// reachable there and the solver guard reports it.
void validate(const GestureParams& params);

struct State {
  double x = 0.0;  // position
  double v = 0.0;  // velocity
};

// b = 2 sqrt(m k); throws ParameterError for non-positive m or k.
double critical_damping(double m, double k);

// x'' from the equation of motion. d_eff = 0 recovers the linear model exactly.
inline double acceleration(const State& s, double target, double k, double b,
                           double d_eff, double m) {
  const double dx = s.x - target;
  return (-b * s.v - k * dx + d_eff * dx * dx * dx) / m;
}

// Summed restoring force -k (x - T) + d_eff (x - T)^3.
inline double restoring_force(double x, double target, double k, double d_eff) {
  const double dx = x - target;
  return -k * dx + d_eff * dx * dx * dx;
}

// Converts params.d into the force coefficient for a gesture starting at x0.
EffectiveCoefficient effective_coefficient(const GestureParams& params, double x0);

// Force components sampled on a uniform position grid.
struct ForceProfile {
  std::vector<double> x;
  std::vector<double> f_linear;  // -k (x - T)
  std::vector<double> f_cubic;   // d_eff (x - T)^3
  std::vector<double> f_sum;
  EffectiveCoefficient coeff;
};

// x0 feeds the scaling law (ignored under proportional scaling).
ForceProfile force_profile(const GestureParams& params, double x0, double x_min,
                           double x_max, int n_points);

}  // namespace gestdyn
