#include <doctest.h>

#include <cmath>

#include "gestdyn/errors.hpp"
#include "gestdyn/solver.hpp"
#include "oracle.hpp"

using namespace gestdyn;

namespace {

GestureParams linear_params(double k) {
  GestureParams params;
  params.k = k;
  params.d = 0.0;
  return params;
}

}  // namespace

TEST_CASE("numerical solution matches the closed form within 1e-6") {
  for (const double k : {500.0, 2000.0, 8000.0}) {
    SimConfig cfg;
    cfg.x0 = 1.0;
    cfg.t_end = 0.5;
    const Trajectory num = integrate(linear_params(k), cfg);
    const Trajectory ref = integrate_linear_analytic(k, 1.0, 0.0, 0.0, num.t);

    REQUIRE(num.t.size() == ref.t.size());
    double max_err_x = 0.0;
    double max_err_v = 0.0;
    for (std::size_t i = 0; i < num.t.size(); ++i) {
      max_err_x = std::max(max_err_x, std::abs(num.x[i] - ref.x[i]));
      max_err_v = std::max(max_err_v, std::abs(num.v[i] - ref.v[i]));
    }
    CAPTURE(k);
    CHECK(max_err_x <= 1e-6);
    CHECK(max_err_v <= 1e-4);
  }
}

TEST_CASE("nonzero launch velocity still matches the closed form") {
  SimConfig cfg;
  cfg.x0 = 1.0;
  cfg.v0 = -4.0;
  cfg.t_end = 0.4;
  const Trajectory num = integrate(linear_params(2000.0), cfg);
  const Trajectory ref = integrate_linear_analytic(2000.0, 1.0, -4.0, 0.0, num.t);
  for (std::size_t i = 0; i < num.t.size(); ++i) {
    CHECK(std::abs(num.x[i] - ref.x[i]) <= 1e-6);
  }
}

TEST_CASE("a heavier mass behaves as a unit mass with stiffness k/m") {
  // m x'' + 2 sqrt(m k) x' + k (x - T) = 0 divided through by m is the
  // critically damped unit-mass system at stiffness k/m.
  GestureParams params = linear_params(2000.0);
  params.m = 4.0;
  SimConfig cfg;
  cfg.x0 = 1.0;
  cfg.t_end = 0.5;
  const Trajectory num = integrate(params, cfg);
  const Trajectory ref = integrate_linear_analytic(500.0, 1.0, 0.0, 0.0, num.t);
  for (std::size_t i = 0; i < num.t.size(); ++i) {
    CHECK(std::abs(num.x[i] - ref.x[i]) <= 1e-6);
  }
}

TEST_CASE("starting at the target stays at the target") {
  GestureParams params = linear_params(2000.0);
  params.d = 0.5;
  params.target = 0.3;
  SimConfig cfg;
  cfg.x0 = 0.3;
  cfg.v0 = 0.0;
  const Trajectory traj = integrate(params, cfg);
  CHECK(traj.status == SolveStatus::converged);
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    CHECK(traj.x[i] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(std::abs(traj.v[i]) <= 1e-12);
  }
}

TEST_CASE("unscaled cubic term at distance 10 diverges and is truncated") {
  GestureParams params;
  params.k = 2000.0;
  params.d = 0.95;  // d' = 0.95 k, far outside the basin at x0 = 10
  SimConfig cfg;
  cfg.x0 = 10.0;
  const Trajectory traj = integrate(params, cfg);

  CHECK(traj.status == SolveStatus::diverged);
  CHECK(traj.t_blowup > 0.0);
  CHECK(traj.t_blowup < 0.05);
  REQUIRE(!traj.t.empty());
  CHECK(traj.t.back() <= traj.t_blowup);

  const double guard = 1e3 * 10.0;
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    CHECK(std::abs(traj.x[i]) <= guard);
    CHECK(std::abs(traj.v[i]) <= guard);
  }
}

TEST_CASE("step collapse without a reachable guard raises SolverError") {
  GestureParams params;
  params.k = 2000.0;
  params.d = 0.95;
  SimConfig cfg;
  cfg.x0 = 10.0;
  cfg.guard = 1e300;  // unreachable: the blowup must stall the stepper instead
  CHECK_THROWS_AS(integrate(params, cfg), SolverError);
}

TEST_CASE("output grid is exact multiples of dt_out") {
  SimConfig cfg;
  cfg.x0 = 1.0;
  cfg.t_end = 0.231;
  const Trajectory traj = integrate(linear_params(2000.0), cfg);
  REQUIRE(traj.t.size() == 232);
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    CHECK(traj.t[i] == static_cast<double>(i) * 0.001);
  }
}

TEST_CASE("critically damped start from rest never overshoots") {
  for (const double k : {500.0, 2000.0}) {
    SimConfig cfg;
    cfg.x0 = 1.0;
    const Trajectory traj = integrate(linear_params(k), cfg);
    double previous = traj.x.front();
    for (const double x : traj.x) {
      CHECK(x >= -1e-10);               // sign never flips
      CHECK(x <= previous + 1e-10);     // distance to target non-increasing
      previous = x;
    }
  }
}

TEST_CASE("linear model scales homogeneously in the initial distance") {
  const double scale = 3.7;
  SimConfig cfg;
  cfg.x0 = 1.0;
  cfg.t_end = 0.3;
  const Trajectory base = integrate(linear_params(2000.0), cfg);
  cfg.x0 = scale;
  const Trajectory scaled = integrate(linear_params(2000.0), cfg);
  REQUIRE(base.t.size() == scaled.t.size());
  for (std::size_t i = 0; i < base.t.size(); ++i) {
    CHECK(scaled.x[i] == doctest::Approx(scale * base.x[i]).epsilon(1e-7));
    CHECK(scaled.v[i] == doctest::Approx(scale * base.v[i]).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("analytic linear trajectory") {
  const auto grid = uniform_grid(0.5, 1e-3);
  const Trajectory traj = integrate_linear_analytic(2000.0, 1.0, 0.0, 0.0, grid);

  SUBCASE("initial conditions are reproduced exactly") {
    CHECK(traj.x.front() == 1.0);
    CHECK(traj.v.front() == 0.0);
  }

  SUBCASE("speed peaks at t = 1/sqrt(k) with value sqrt(k)/e") {
    // |v|(t) = w^2 t e^(-w t); maximize over the dense grid for the check
    std::size_t arg = 0;
    for (std::size_t i = 0; i < traj.v.size(); ++i) {
      if (std::abs(traj.v[i]) > std::abs(traj.v[arg])) arg = i;
    }
    CHECK(traj.t[arg] == doctest::Approx(1.0 / std::sqrt(2000.0)).epsilon(0.03));
    CHECK(std::abs(traj.v[arg]) ==
          doctest::Approx(std::sqrt(2000.0) * std::exp(-1.0)).epsilon(1e-3));
  }

  SUBCASE("derivative consistency: v matches a central difference of x") {
    // O(dt^2) truncation with x''' ~ w^3 allows ~2% here
    for (std::size_t i = 1; i + 1 < traj.t.size(); i += 37) {
      const double fd = (traj.x[i + 1] - traj.x[i - 1]) / 2e-3;
      CHECK(traj.v[i] == doctest::Approx(fd).epsilon(0.02).scale(1.0));
    }
  }

  SUBCASE("zero initial offset gives identically zero motion") {
    const Trajectory still = integrate_linear_analytic(2000.0, 0.4, 0.0, 0.4, grid);
    for (std::size_t i = 0; i < still.t.size(); ++i) {
      CHECK(still.x[i] == 0.4);
      CHECK(still.v[i] == 0.0);
    }
  }

  CHECK_THROWS_AS(integrate_linear_analytic(0.0, 1.0, 0.0, 0.0, grid), ParameterError);
}

TEST_CASE("default span settles the linear gesture") {
  // 20 / sqrt(k) exceeds the 1% settling time by roughly an order of magnitude
  for (const double k : {500.0, 2000.0, 8000.0}) {
    SimConfig cfg;
    cfg.x0 = 1.0;
    const Trajectory traj = integrate(linear_params(k), cfg);
    CHECK(traj.status == SolveStatus::converged);
    CHECK(traj.t.back() == doctest::Approx(20.0 / std::sqrt(k)).epsilon(0.01));
  }
}

TEST_CASE("config validation") {
  SimConfig cfg;
  SUBCASE("bad dt") {
    cfg.dt_out = 0.0;
    CHECK_THROWS_AS(validate(cfg), ParameterError);
  }
  SUBCASE("bad tolerances") {
    cfg.rtol = 0.0;
    CHECK_THROWS_AS(validate(cfg), ParameterError);
  }
  SUBCASE("bad t_end") {
    cfg.t_end = -0.1;
    CHECK_THROWS_AS(validate(cfg), ParameterError);
  }
  SUBCASE("span shorter than one output step") {
    cfg.t_end = 1e-4;
    CHECK_THROWS_AS(integrate(GestureParams{}, cfg), ParameterError);
  }
  SUBCASE("non-finite start") {
    cfg.x0 = std::nan("");
    CHECK_THROWS_AS(validate(cfg), ParameterError);
  }
}
