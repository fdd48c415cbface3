#include "gestdyn/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "gestdyn/errors.hpp"

namespace gestdyn {

namespace {

void check_usable(const Trajectory& traj) {
  if (traj.status == SolveStatus::diverged) {
    throw ParameterError("kinematic landmarks are undefined for a diverged trajectory");
  }
  if (traj.v.size() < 3) {
    throw ParameterError("trajectory too short for kinematic analysis");
  }
}

}  // namespace

PeakVelocity peak_velocity(const Trajectory& traj) {
  check_usable(traj);

  std::size_t peak = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < traj.v.size(); ++i) {
    const double speed = std::abs(traj.v[i]);
    if (speed > best) {
      best = speed;
      peak = i;
    }
  }
  if (best == 0.0) {
    return {0.0, 0.0};  // never moved
  }

  if (peak == 0 || peak + 1 == traj.v.size()) {
    return {traj.t[peak], best};
  }

  // Quadratic through the three bracketing samples; the grid argmax alone is
  // too coarse for sub-percent power-law work at dt_out = 1 ms.
  const double lo = std::abs(traj.v[peak - 1]);
  const double mid = best;
  const double hi = std::abs(traj.v[peak + 1]);
  const double curvature = lo - 2.0 * mid + hi;
  if (curvature == 0.0) {
    return {traj.t[peak], best};
  }
  const double shift = std::clamp(0.5 * (lo - hi) / curvature, -1.0, 1.0);
  const double dt = traj.t[1] - traj.t[0];
  return {traj.t[peak] + shift * dt, mid - 0.25 * (lo - hi) * shift};
}

MovementWindow movement_window(const Trajectory& traj, double frac) {
  check_usable(traj);
  if (!(frac > 0.0 && frac < 1.0)) {
    throw ParameterError("threshold fraction must lie in (0, 1)");
  }
  const PeakVelocity peak = peak_velocity(traj);
  if (peak.pv <= 0.0) {
    throw ParameterError("movement window undefined: trajectory has no velocity peak");
  }
  const double threshold = frac * peak.pv;

  const auto& t = traj.t;
  std::vector<double> speed(traj.v.size());
  std::transform(traj.v.begin(), traj.v.end(), speed.begin(),
                 [](double v) { return std::abs(v); });

  std::size_t first = 0;
  while (first < speed.size() && speed[first] < threshold) ++first;
  if (first == speed.size()) {
    // The refined peak can sit slightly above every grid sample, so a
    // fraction near 1 may clear the whole profile.
    throw ParameterError("no sample reaches the velocity threshold");
  }
  std::size_t last = speed.size() - 1;
  while (speed[last] < threshold) --last;

  MovementWindow window;
  if (first == 0) {
    window.t_onset = t.front();
  } else {
    const double f = (threshold - speed[first - 1]) / (speed[first] - speed[first - 1]);
    window.t_onset = t[first - 1] + f * (t[first] - t[first - 1]);
  }
  if (last + 1 == speed.size()) {
    window.t_offset = t.back();
  } else {
    const double f = (speed[last] - threshold) / (speed[last] - speed[last + 1]);
    window.t_offset = t[last] + f * (t[last + 1] - t[last]);
  }
  return window;
}

std::optional<double> settling_duration(const Trajectory& traj, double eps) {
  check_usable(traj);
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ParameterError("settling fraction must lie in (0, 1)");
  }
  const double target = traj.params.target;
  const double dist0 = std::abs(traj.x.front() - target);
  if (dist0 == 0.0) {
    return 0.0;
  }
  const double threshold = eps * dist0;

  // Last sample still outside the band; everything after it has settled.
  std::size_t last_outside = traj.x.size();
  for (std::size_t i = traj.x.size(); i-- > 0;) {
    if (std::abs(traj.x[i] - target) > threshold) {
      last_outside = i;
      break;
    }
  }
  if (last_outside == traj.x.size()) {
    return traj.t.front();
  }
  if (last_outside + 1 == traj.x.size()) {
    return std::nullopt;  // never settles within the simulated span
  }
  return traj.t[last_outside + 1];
}

KinematicSummary summarize(const Trajectory& traj) {
  KinematicSummary summary;
  const PeakVelocity peak = peak_velocity(traj);
  summary.pv = peak.pv;
  summary.t_pv = peak.t_pv;
  summary.settle = settling_duration(traj);
  if (peak.pv <= 0.0) {
    return summary;  // degenerate x0 = T case: all-zero landmarks
  }
  const MovementWindow window = movement_window(traj);
  summary.t_onset = window.t_onset;
  summary.t_offset = window.t_offset;
  const double span = window.t_offset - window.t_onset;
  summary.symmetry = span > 0.0 ? (peak.t_pv - window.t_onset) / span : 0.0;
  return summary;
}

}  // namespace gestdyn
