#include "gestdyn/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gestdyn/errors.hpp"

namespace gestdyn {

namespace {

constexpr double kSpreadTol = 1e-10;
constexpr int kMaxIterations = 2000;

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Bounded transform: z in R maps to a point strictly inside [lo, hi].
double from_unbounded(double z, const Bounds& b) {
  return b.lo + (b.hi - b.lo) * logistic(z);
}

double to_unbounded(double p, const Bounds& b) {
  const double width = b.hi - b.lo;
  // Guesses sitting on (or hugging) a bound start 0.1% inside instead: the
  // logistic tail is numerically flat there and the simplex cannot move.
  const double q = std::clamp((p - b.lo) / width, 1e-3, 1.0 - 1e-3);
  return std::log(q / (1.0 - q));
}

void check_bounds(const Bounds& b, const char* name) {
  if (!(b.lo < b.hi)) {
    throw ParameterError(std::string(name) + " bounds must satisfy lo < hi");
  }
}

void check_init(double init, const Bounds& b, const char* name) {
  if (!(init >= b.lo && init <= b.hi)) {
    throw ParameterError(std::string(name) + " initial guess lies outside its bounds");
  }
}

struct FreeVector {
  // Transformed coordinates in the order k, d, T (present ones only).
  std::vector<double> z;
};

}  // namespace

void validate(const FitProblem& problem) {
  if (problem.t.size() < 3 || problem.t.size() != problem.x.size()) {
    throw ParameterError("fit needs at least 3 (t, x) samples");
  }
  if (!problem.v.empty() && problem.v.size() != problem.t.size()) {
    throw ParameterError("velocity column length does not match the grid");
  }
  if (!problem.fit_k && !problem.fit_d && !problem.fit_target) {
    throw ParameterError("fit needs at least one free parameter");
  }
  const std::size_t n = problem.t.size();
  const double dt = (problem.t.back() - problem.t.front()) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) {
    throw ParameterError("observed time grid is not increasing");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(problem.t[i + 1] - problem.t[i] - dt) > 1e-6 * dt) {
      throw ParameterError("observed time grid is not uniform");
    }
  }
  if (problem.fit_k) {
    check_bounds(problem.k_bounds, "k");
    check_init(problem.k_init, problem.k_bounds, "k");
  }
  if (problem.fit_d) {
    check_bounds(problem.d_bounds, "d");
    check_init(problem.d_init, problem.d_bounds, "d");
    if (problem.d_bounds.lo < 0.0) {
      throw ParameterError("d bounds must start at or above 0");
    }
    if (problem.base.scaling != ScalingMode::proportional &&
        problem.d_bounds.hi >= 1.0) {
      throw ParameterError("d bounds must stay below 1 under distance scaling");
    }
  }
  if (problem.fit_target) {
    check_bounds(problem.target_bounds, "T");
    check_init(problem.target_init, problem.target_bounds, "T");
  }
  if (problem.w_v < 0.0) {
    throw ParameterError("velocity weight w_v must be >= 0");
  }
}

double objective(double k, double d, double target, const FitProblem& problem) {
  GestureParams params = problem.base;
  params.k = k;
  params.d = d;
  params.target = target;

  const std::size_t n = problem.t.size();
  const double dt = (problem.t.back() - problem.t.front()) / static_cast<double>(n - 1);

  SimConfig cfg;
  cfg.x0 = problem.x.front();
  cfg.v0 = problem.v.empty() ? problem.v0 : problem.v.front();
  cfg.dt_out = dt;
  cfg.t_end = problem.t.back() - problem.t.front();

  const double penalty = 1e6 * std::max(1.0, std::abs(cfg.x0 - target));

  Trajectory sim;
  try {
    sim = integrate(params, cfg);
  } catch (const SolverError&) {
    return penalty;
  }
  if (sim.status == SolveStatus::diverged || sim.x.size() != n) {
    return penalty;
  }

  double ss_x = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = sim.x[i] - problem.x[i];
    ss_x += r * r;
  }
  double rmse = std::sqrt(ss_x / static_cast<double>(n));

  if (problem.w_v > 0.0 && !problem.v.empty()) {
    double ss_v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = sim.v[i] - problem.v[i];
      ss_v += r * r;
    }
    rmse += problem.w_v * std::sqrt(ss_v / static_cast<double>(n));
  }
  return rmse;
}

FitResult fit_gesture(const FitProblem& problem) {
  validate(problem);

  std::vector<Bounds> bounds;
  std::vector<double> init;
  if (problem.fit_k) {
    bounds.push_back(problem.k_bounds);
    init.push_back(problem.k_init);
  }
  if (problem.fit_d) {
    bounds.push_back(problem.d_bounds);
    init.push_back(problem.d_init);
  }
  if (problem.fit_target) {
    bounds.push_back(problem.target_bounds);
    init.push_back(problem.target_init);
  }
  const std::size_t dim = bounds.size();

  auto unpack = [&](const std::vector<double>& z) {
    double k = problem.base.k, d = problem.base.d, target = problem.base.target;
    std::size_t j = 0;
    if (problem.fit_k) k = from_unbounded(z[j++], problem.k_bounds);
    if (problem.fit_d) d = from_unbounded(z[j++], problem.d_bounds);
    if (problem.fit_target) target = from_unbounded(z[j++], problem.target_bounds);
    return std::array<double, 3>{k, d, target};
  };
  auto eval = [&](const std::vector<double>& z) {
    const auto [k, d, target] = unpack(z);
    return objective(k, d, target, problem);
  };

  // Initial simplex: the guess plus one vertex per coordinate, perturbed by
  // 10% in transformed space. A mid-range guess maps to z ~ 0 where a
  // relative perturbation degenerates, so the step has an absolute floor.
  std::vector<double> z0(dim);
  for (std::size_t i = 0; i < dim; ++i) z0[i] = to_unbounded(init[i], bounds[i]);

  std::vector<std::vector<double>> simplex(dim + 1, z0);
  for (std::size_t i = 0; i < dim; ++i) {
    simplex[i + 1][i] = z0[i] + std::max(0.1 * std::abs(z0[i]), 0.1);
  }
  std::vector<double> value(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) value[i] = eval(simplex[i]);

  constexpr double rho = 1.0;    // reflection
  constexpr double chi = 2.0;    // expansion
  constexpr double gamma = 0.5;  // contraction
  constexpr double sigma = 0.5;  // shrink

  int iterations = 0;
  bool converged = false;
  std::vector<std::size_t> order(dim + 1);

  while (iterations < kMaxIterations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });

    if (value[order.back()] - value[order.front()] < kSpreadTol) {
      converged = true;
      break;
    }
    ++iterations;

    const std::size_t worst = order.back();
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double coeff) {
      std::vector<double> p(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        p[j] = centroid[j] + coeff * (centroid[j] - simplex[worst][j]);
      }
      return p;
    };

    const std::vector<double> reflected = blend(rho);
    const double f_reflected = eval(reflected);
    const double f_best = value[order.front()];
    const double f_second_worst = value[order[dim - 1]];

    if (f_reflected < f_best) {
      const std::vector<double> expanded = blend(rho * chi);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        value[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        value[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < f_second_worst) {
      simplex[worst] = reflected;
      value[worst] = f_reflected;
      continue;
    }

    if (f_reflected < value[worst]) {
      const std::vector<double> outside = blend(rho * gamma);
      const double f_outside = eval(outside);
      if (f_outside <= f_reflected) {
        simplex[worst] = outside;
        value[worst] = f_outside;
        continue;
      }
    } else {
      const std::vector<double> inside = blend(-gamma);
      const double f_inside = eval(inside);
      if (f_inside < value[worst]) {
        simplex[worst] = inside;
        value[worst] = f_inside;
        continue;
      }
    }

    // Shrink toward the best vertex.
    const std::size_t best = order.front();
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        simplex[i][j] = simplex[best][j] + sigma * (simplex[i][j] - simplex[best][j]);
      }
      value[i] = eval(simplex[i]);
    }
  }

  const std::size_t best =
      std::distance(value.begin(), std::min_element(value.begin(), value.end()));
  const auto [k, d, target] = unpack(simplex[best]);

  FitResult result;
  result.k = k;
  result.d = d;
  result.target = target;
  result.rmse = value[best];
  result.iterations = iterations;
  result.converged = converged;
  return result;
}

}  // namespace gestdyn
