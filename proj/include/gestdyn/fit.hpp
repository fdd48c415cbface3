#pragma once

#include <vector>

#include "gestdyn/solver.hpp"

namespace gestdyn {

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

// Inverse problem: recover gesture parameters from an observed trajectory.
// Any subset of {k, d, T} can be free; the rest are taken from `base`.
// Critical damping is always enforced, so b is never a fit variable.
struct FitProblem {
  std::vector<double> t;  // uniform grid starting at 0
  std::vector<double> x;
  std::vector<double> v;  // optional; empty when only positions were observed

  bool fit_k = true;
  bool fit_d = true;
  bool fit_target = false;

  GestureParams base;  // scaling mode, n, D, and fixed parameter values

  Bounds k_bounds{10.0, 1e5};
  Bounds d_bounds{0.0, 1.0 - 1e-6};
  Bounds target_bounds{0.0, 0.0};  // derived from the data when left empty

  double k_init = 1000.0;
  double d_init = 0.5;
  double target_init = 0.0;

  double v0 = 0.0;   // initial velocity used when simulating candidates
  double w_v = 0.0;  // weight of the velocity term in the objective
};

void validate(const FitProblem& problem);

// Position RMSE (+ w_v * velocity RMSE) of a candidate simulated on the
// observed grid. A diverged or stalled candidate returns a large penalty,
// 1e6 * max(1, |x0 - T|), rather than throwing.
double objective(double k, double d, double target, const FitProblem& problem);

struct FitResult {
  double k = 0.0;
  double d = 0.0;
  double target = 0.0;
  double rmse = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nelder-Mead simplex over the free parameters, each mapped onto its bounds
// by a logistic transform so every evaluated candidate is strictly interior.
// Stops when the simplex objective spread drops below 1e-10, or after 2000
// iterations (converged = false, not an error). Deterministic.
FitResult fit_gesture(const FitProblem& problem);

}  // namespace gestdyn
