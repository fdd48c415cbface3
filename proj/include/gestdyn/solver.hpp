#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gestdyn/model.hpp"

namespace gestdyn {

struct SimConfig {
  double x0 = 1.0;
  double v0 = 0.0;
  std::optional<double> t_end;  // seconds; defaults to 20 / sqrt(k)
  double dt_out = 1e-3;         // output grid step
  double rtol = 1e-8;
  double atol = 1e-10;
  std::optional<double> guard;  // defaults to 1e3 * max(|x0|, |T|, 1)
};

void validate(const SimConfig& cfg);

enum class SolveStatus {
  converged,  // reached t_end settled within 1% of the initial distance
  completed,  // reached t_end without settling
  diverged,   // |x| or |v| exceeded the guard; samples truncated
};

const char* to_string(SolveStatus status);

struct Trajectory {
  std::vector<double> t;  // uniform grid, t[i] = i * dt_out exactly
  std::vector<double> x;
  std::vector<double> v;
  SolveStatus status = SolveStatus::completed;
  double t_blowup = 0.0;  // meaningful only when status == diverged
  GestureParams params;
  EffectiveCoefficient coeff;
};

// Integrates the gesture ODE with an adaptive Dormand-Prince 5(4) pair and
// 5th-order dense output onto the uniform grid. The effective coefficient is
// computed from (params, cfg.x0) before stepping. Throws SolverError if the
// internal step collapses below 1e-14 s.
Trajectory integrate(const GestureParams& params, const SimConfig& cfg);

// Closed-form solution of the critically damped linear model,
//   x(t) = T + (A + B t) e^(-w t),  w = sqrt(k), A = x0 - T, B = v0 + w A,
// evaluated on the given grid. Shares no code with integrate(); used as the
// independent oracle for it.
Trajectory integrate_linear_analytic(double k, double x0, double v0, double target,
                                     std::span<const double> grid);

// Grid times i * dt for i = 0 .. floor(t_end / dt), computed by
// multiplication so there is no accumulation drift.
std::vector<double> uniform_grid(double t_end, double dt);

}  // namespace gestdyn
