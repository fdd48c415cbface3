#pragma once

#include <optional>

#include "gestdyn/solver.hpp"

namespace gestdyn {

struct PeakVelocity {
  double t_pv = 0.0;  // time of |v| maximum, from t = 0
  double pv = 0.0;    // peak speed
};

// Grid maximum of |v| refined by quadratic interpolation through the three
// samples bracketing it. A trajectory that never moves yields {0, 0}.
// Requires a non-diverged trajectory with at least 3 samples.
PeakVelocity peak_velocity(const Trajectory& traj);

struct MovementWindow {
  double t_onset = 0.0;   // first rise of |v| through frac * pv
  double t_offset = 0.0;  // last fall of |v| through frac * pv
};

// Crossings are linearly interpolated between samples. Throws ParameterError
// when the trajectory has no velocity peak (pv = 0).
MovementWindow movement_window(const Trajectory& traj, double frac = 0.1);

// First grid time after which |x - T| stays within eps * |x0 - T|.
// nullopt when the trajectory never settles within its time span.
std::optional<double> settling_duration(const Trajectory& traj, double eps = 0.01);

struct KinematicSummary {
  double pv = 0.0;
  double t_pv = 0.0;
  double t_onset = 0.0;
  double t_offset = 0.0;
  std::optional<double> settle;
  double symmetry = 0.0;  // (t_pv - t_onset) / (t_offset - t_onset)
};

// Composes the landmarks above with default thresholds. The degenerate
// x0 = T case produces an all-zero summary rather than an error.
KinematicSummary summarize(const Trajectory& traj);

}  // namespace gestdyn
