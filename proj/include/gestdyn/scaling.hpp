#pragma once

#include <string_view>

namespace gestdyn {

// How the user-facing nonlinear ratio d is turned into the force
// coefficient that multiplies (x - T)^3 in the equation of motion.
//
//   proportional:  d' = d * k
//   local:         d' = d * k / |x0 - T|^(n-1)
//   global:        d' = lambda * d * k / |x0 - T|^(n-1),
//                  lambda = min(1, |x0 - T| / D)
enum class ScalingMode { proportional, local, global };

const char* to_string(ScalingMode mode);
ScalingMode parse_scaling_mode(std::string_view name);

// Distances below this are treated as "gesture starts at its target":
// the nonlinear term is physically irrelevant there, so the scaled
// coefficient is defined as 0 instead of blowing up.
inline constexpr double kDegenerateDistance = 1e-12;

struct EffectiveCoefficient {
  double value = 0.0;   // coefficient applied to (x - T)^3, units of k / pos^(n-1)
  double lambda = 1.0;  // range ratio; 1 for non-global modes
  ScalingMode mode = ScalingMode::proportional;
};

EffectiveCoefficient scale_proportional(double d, double k);
EffectiveCoefficient scale_local(double d, double k, double x0, double target, int n);
EffectiveCoefficient scale_global(double d, double k, double x0, double target, int n,
                                  double range);

// Total possible movement range D of an articulator, from its extreme positions.
double movement_range(double x_min, double x_max);

// lambda = min(1, |x0 - target| / range); range may legitimately be smaller
// than the actual distance (restricted-range regime), the ratio just clamps.
double lambda_factor(double x0, double target, double range);

}  // namespace gestdyn
