#include "gestdyn/scaling.hpp"

#include <cmath>
#include <string>

#include "gestdyn/errors.hpp"

namespace gestdyn {

namespace {

void check_ratio_and_stiffness(double d, double k, bool bounded_above) {
  if (!(d >= 0.0)) {
    throw ParameterError("nonlinear ratio d must be >= 0, got " + std::to_string(d));
  }
  if (bounded_above && !(d < 1.0)) {
    throw ParameterError("nonlinear ratio d must be < 1 under distance scaling, got " +
                         std::to_string(d));
  }
  if (!(k > 0.0)) {
    throw ParameterError("stiffness k must be > 0, got " + std::to_string(k));
  }
}

void check_exponent(int n) {
  if (n < 1) {
    throw ParameterError("polynomial exponent n must be >= 1, got " + std::to_string(n));
  }
}

// |x0 - T|^(n-1); n = 1 collapses to 1 so distance drops out entirely.
double distance_power(double distance, int n) {
  return std::pow(distance, n - 1);
}

}  // namespace

const char* to_string(ScalingMode mode) {
  switch (mode) {
    case ScalingMode::proportional: return "proportional";
    case ScalingMode::local: return "local";
    case ScalingMode::global: return "global";
  }
  return "?";
}

ScalingMode parse_scaling_mode(std::string_view name) {
  if (name == "proportional") return ScalingMode::proportional;
  if (name == "local") return ScalingMode::local;
  if (name == "global") return ScalingMode::global;
  throw ParameterError("unknown scaling mode '" + std::string(name) +
                       "' (expected proportional, local, or global)");
}

EffectiveCoefficient scale_proportional(double d, double k) {
  check_ratio_and_stiffness(d, k, /*bounded_above=*/false);
  return {d * k, 1.0, ScalingMode::proportional};
}

EffectiveCoefficient scale_local(double d, double k, double x0, double target, int n) {
  check_ratio_and_stiffness(d, k, /*bounded_above=*/true);
  check_exponent(n);
  const double distance = std::abs(x0 - target);
  if (n > 1 && distance < kDegenerateDistance) {
    return {0.0, 1.0, ScalingMode::local};
  }
  return {d * k / distance_power(distance, n), 1.0, ScalingMode::local};
}

double movement_range(double x_min, double x_max) {
  const double range = std::abs(x_max - x_min);
  if (range == 0.0) {
    throw ParameterError("movement range endpoints coincide");
  }
  return range;
}

double lambda_factor(double x0, double target, double range) {
  if (!(range > 0.0)) {
    throw ParameterError("movement range D must be > 0, got " + std::to_string(range));
  }
  return std::min(1.0, std::abs(x0 - target) / range);
}

EffectiveCoefficient scale_global(double d, double k, double x0, double target, int n,
                                  double range) {
  check_ratio_and_stiffness(d, k, /*bounded_above=*/true);
  check_exponent(n);
  const double lambda = lambda_factor(x0, target, range);
  const double distance = std::abs(x0 - target);
  if (n > 1 && distance < kDegenerateDistance) {
    return {0.0, lambda, ScalingMode::global};
  }
  return {lambda * d * k / distance_power(distance, n), lambda, ScalingMode::global};
}

}  // namespace gestdyn
