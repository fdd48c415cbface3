#include "gestdyn/model.hpp"

#include <cmath>
#include <string>

#include "gestdyn/errors.hpp"

namespace gestdyn {

void validate(const GestureParams& params) {
  if (!(params.m > 0.0)) {
    throw ParameterError("mass m must be > 0, got " + std::to_string(params.m));
  }
  if (!(params.k > 0.0)) {
    throw ParameterError("stiffness k must be > 0, got " + std::to_string(params.k));
  }
  if (params.n < 1) {
    throw ParameterError("polynomial exponent n must be >= 1, got " +
                         std::to_string(params.n));
  }
  if (!(params.d >= 0.0)) {
    throw ParameterError("nonlinear ratio d must be >= 0, got " +
                         std::to_string(params.d));
  }
  if (params.scaling != ScalingMode::proportional && !(params.d < 1.0)) {
    throw ParameterError("nonlinear ratio d must be < 1 under " +
                         std::string(to_string(params.scaling)) + " scaling, got " +
                         std::to_string(params.d));
  }
  if (params.scaling == ScalingMode::global) {
    if (!params.range) {
      throw ParameterError("global scaling requires a movement range D");
    }
    if (!(*params.range > 0.0)) {
      throw ParameterError("movement range D must be > 0, got " +
                           std::to_string(*params.range));
    }
  }
  if (!std::isfinite(params.target)) {
    throw ParameterError("target T must be finite");
  }
}

double critical_damping(double m, double k) {
  if (!(m > 0.0) || !(k > 0.0)) {
    throw ParameterError("critical damping requires m > 0 and k > 0");
  }
  return 2.0 * std::sqrt(m * k);
}

EffectiveCoefficient effective_coefficient(const GestureParams& params, double x0) {
  switch (params.scaling) {
    case ScalingMode::proportional:
      return scale_proportional(params.d, params.k);
    case ScalingMode::local:
      return scale_local(params.d, params.k, x0, params.target, params.n);
    case ScalingMode::global:
      if (!params.range) {
        throw ParameterError("global scaling requires a movement range D");
      }
      return scale_global(params.d, params.k, x0, params.target, params.n, *params.range);
  }
  throw ParameterError("unhandled scaling mode");
}

ForceProfile force_profile(const GestureParams& params, double x0, double x_min,
                           double x_max, int n_points) {
  validate(params);
  if (!(x_min < x_max)) {
    throw ParameterError("force profile needs x_min < x_max");
  }
  if (n_points < 2) {
    throw ParameterError("force profile needs at least 2 points");
  }

  ForceProfile profile;
  profile.coeff = effective_coefficient(params, x0);
  profile.x.reserve(n_points);
  profile.f_linear.reserve(n_points);
  profile.f_cubic.reserve(n_points);
  profile.f_sum.reserve(n_points);

  const double step = (x_max - x_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double x = (i == n_points - 1) ? x_max : x_min + i * step;
    const double dx = x - params.target;
    const double lin = -params.k * dx;
    const double cub = profile.coeff.value * dx * dx * dx;
    profile.x.push_back(x);
    profile.f_linear.push_back(lin);
    profile.f_cubic.push_back(cub);
    profile.f_sum.push_back(lin + cub);
  }
  return profile;
}

}  // namespace gestdyn
