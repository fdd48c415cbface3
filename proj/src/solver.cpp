#include "gestdyn/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gestdyn/errors.hpp"

namespace gestdyn {

namespace {

using Vec2 = std::array<double, 2>;  // (x, v)

// Dormand-Prince 5(4) tableau (Hairer, Norsett & Wanner, "Solving ODEs I").
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

// 5th-order minus embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// Dense-output weights for the locally 5th-order interpolant.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

constexpr double kMinStep = 1e-14;
constexpr double kSettleFraction = 0.01;  // converged = settled within 1% by t_end

struct Rhs {
  double target, k, b, d_eff, m;

  Vec2 operator()(const Vec2& y) const {
    return {y[1], acceleration({y[0], y[1]}, target, k, b, d_eff, m)};
  }
};

double rms_scaled(const Vec2& v, const Vec2& scale) {
  const double a = v[0] / scale[0];
  const double b2 = v[1] / scale[1];
  return std::sqrt(0.5 * (a * a + b2 * b2));
}

// Hairer's starting step size heuristic.
double initial_step(const Rhs& rhs, const Vec2& y0, const Vec2& f0, double t_end,
                    double rtol, double atol) {
  const Vec2 sc{atol + rtol * std::abs(y0[0]), atol + rtol * std::abs(y0[1])};
  const double d0 = rms_scaled(y0, sc);
  const double dd1 = rms_scaled(f0, sc);
  double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
  h0 = std::min(h0, t_end);

  const Vec2 y1{y0[0] + h0 * f0[0], y0[1] + h0 * f0[1]};
  const Vec2 f1 = rhs(y1);
  const Vec2 df{f1[0] - f0[0], f1[1] - f0[1]};
  const double dd2 = rms_scaled(df, sc) / h0;

  double h1;
  if (std::max(dd1, dd2) <= 1e-15) {
    h1 = std::max(1e-6, h0 * 1e-3);
  } else {
    h1 = std::pow(0.01 / std::max(dd1, dd2), 0.2);
  }
  return std::min({100.0 * h0, h1, t_end});
}

struct DenseStep {
  double t0 = 0.0, h = 0.0;
  Vec2 r1{}, r2{}, r3{}, r4{}, r5{};

  Vec2 eval(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    Vec2 out;
    for (int i = 0; i < 2; ++i) {
      out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
    }
    return out;
  }
};

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::completed: return "completed";
    case SolveStatus::diverged: return "diverged";
  }
  return "?";
}

void validate(const SimConfig& cfg) {
  if (!std::isfinite(cfg.x0) || !std::isfinite(cfg.v0)) {
    throw ParameterError("initial conditions must be finite");
  }
  if (cfg.t_end && !(*cfg.t_end > 0.0)) {
    throw ParameterError("t_end must be > 0");
  }
  if (!(cfg.dt_out > 0.0)) {
    throw ParameterError("dt_out must be > 0");
  }
  if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) {
    throw ParameterError("rtol and atol must be > 0");
  }
  if (cfg.guard && !(*cfg.guard > 0.0)) {
    throw ParameterError("divergence guard must be > 0");
  }
}

std::vector<double> uniform_grid(double t_end, double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0)) {
    throw ParameterError("grid needs t_end > 0 and dt > 0");
  }
  const auto n = static_cast<long>(std::floor(t_end / dt + 1e-9));
  std::vector<double> grid(n + 1);
  for (long i = 0; i <= n; ++i) {
    grid[i] = static_cast<double>(i) * dt;
  }
  return grid;
}

Trajectory integrate(const GestureParams& params, const SimConfig& cfg) {
  validate(params);
  validate(cfg);

  const double t_end = cfg.t_end ? *cfg.t_end : 20.0 / std::sqrt(params.k);
  const double dt = cfg.dt_out;
  const auto n_steps = static_cast<long>(std::floor(t_end / dt + 1e-9));
  if (n_steps < 1) {
    throw ParameterError("t_end shorter than one output step");
  }
  const double guard =
      cfg.guard ? *cfg.guard
                : 1e3 * std::max({std::abs(cfg.x0), std::abs(params.target), 1.0});

  Trajectory traj;
  traj.params = params;
  traj.coeff = effective_coefficient(params, cfg.x0);

  const Rhs rhs{params.target, params.k, critical_damping(params.m, params.k),
                traj.coeff.value, params.m};

  traj.t.reserve(n_steps + 1);
  traj.x.reserve(n_steps + 1);
  traj.v.reserve(n_steps + 1);
  traj.t.push_back(0.0);
  traj.x.push_back(cfg.x0);
  traj.v.push_back(cfg.v0);

  auto exceeds_guard = [guard](const Vec2& y) {
    return !std::isfinite(y[0]) || !std::isfinite(y[1]) || std::abs(y[0]) > guard ||
           std::abs(y[1]) > guard;
  };

  double t = 0.0;
  Vec2 y{cfg.x0, cfg.v0};
  Vec2 f = rhs(y);
  double h = initial_step(rhs, y, f, t_end, cfg.rtol, cfg.atol);

  long i_out = 1;
  bool diverged = false;

  while (t < t_end && i_out <= n_steps) {
    h = std::min(h, t_end - t);
    if (h < kMinStep) {
      if (t_end - t < 1e-10 * std::max(1.0, t_end)) break;  // landed on t_end
      throw SolverError("step size collapsed at t = " + std::to_string(t) +
                        " (stiff or unstable configuration)");
    }

    const Vec2 k1 = f;
    Vec2 yt{y[0] + h * a21 * k1[0], y[1] + h * a21 * k1[1]};
    const Vec2 k2 = rhs(yt);
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    const Vec2 k3 = rhs(yt);
    for (int i = 0; i < 2; ++i)
      yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    const Vec2 k4 = rhs(yt);
    for (int i = 0; i < 2; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    const Vec2 k5 = rhs(yt);
    for (int i = 0; i < 2; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                          a65 * k5[i]);
    const Vec2 k6 = rhs(yt);
    Vec2 y_new;
    for (int i = 0; i < 2; ++i)
      y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                             a76 * k6[i]);
    const Vec2 k7 = rhs(y_new);

    Vec2 est;
    for (int i = 0; i < 2; ++i)
      est[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                    e7 * k7[i]);
    const Vec2 sc{cfg.atol + cfg.rtol * std::max(std::abs(y[0]), std::abs(y_new[0])),
                  cfg.atol + cfg.rtol * std::max(std::abs(y[1]), std::abs(y_new[1]))};
    const double err = rms_scaled(est, sc);

    if (!(err <= 1.0)) {
      // Rejected: shrink and retry, never grow.
      const double fac = std::isfinite(err)
                             ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0)
                             : 0.2;
      h *= fac;
      continue;
    }

    const double t_new = t + h;

    DenseStep dense;
    dense.t0 = t;
    dense.h = h;
    for (int i = 0; i < 2; ++i) {
      const double ydiff = y_new[i] - y[i];
      const double bspl = h * k1[i] - ydiff;
      dense.r1[i] = y[i];
      dense.r2[i] = ydiff;
      dense.r3[i] = bspl;
      dense.r4[i] = ydiff - h * k7[i] - bspl;
      dense.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                         d6 * k6[i] + d7 * k7[i]);
    }

    // Emit grid samples covered by this step; stop at the first one outside
    // the guard so no samples after a blowup are ever produced. The slack
    // absorbs the rounding of t_new against exact grid multiples.
    const double emit_slack = 1e-12 * std::max(t_new, dt);
    while (i_out <= n_steps) {
      const double tg = static_cast<double>(i_out) * dt;
      if (tg > t_new + emit_slack) break;
      const Vec2 yg = dense.eval(tg);
      if (exceeds_guard(yg)) {
        diverged = true;
        traj.t_blowup = t_new;
        break;
      }
      traj.t.push_back(tg);
      traj.x.push_back(yg[0]);
      traj.v.push_back(yg[1]);
      ++i_out;
    }
    if (diverged) break;

    if (exceeds_guard(y_new)) {
      diverged = true;
      traj.t_blowup = t_new;
      break;
    }

    t = t_new;
    y = y_new;
    f = k7;  // first-same-as-last
    h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
  }

  if (diverged) {
    traj.status = SolveStatus::diverged;
    return traj;
  }

  const double dist0 = std::abs(cfg.x0 - params.target);
  const bool settled =
      dist0 < kDegenerateDistance ||
      std::abs(traj.x.back() - params.target) <= kSettleFraction * dist0;
  traj.status = settled ? SolveStatus::converged : SolveStatus::completed;
  return traj;
}

Trajectory integrate_linear_analytic(double k, double x0, double v0, double target,
                                     std::span<const double> grid) {
  if (!(k > 0.0)) {
    throw ParameterError("stiffness k must be > 0");
  }
  if (grid.size() < 2) {
    throw ParameterError("grid needs at least 2 samples");
  }

  const double w = std::sqrt(k);
  const double A = x0 - target;
  const double B = v0 + w * A;

  Trajectory traj;
  traj.params.k = k;
  traj.params.d = 0.0;
  traj.params.target = target;
  traj.coeff = scale_proportional(0.0, k);
  traj.t.assign(grid.begin(), grid.end());
  traj.x.reserve(grid.size());
  traj.v.reserve(grid.size());
  for (const double t : grid) {
    const double decay = std::exp(-w * t);
    const double poly = A + B * t;
    traj.x.push_back(target + poly * decay);
    traj.v.push_back((B - w * poly) * decay);
  }

  const double dist0 = std::abs(x0 - target);
  const bool settled = dist0 < kDegenerateDistance ||
                       std::abs(traj.x.back() - target) <= kSettleFraction * dist0;
  traj.status = settled ? SolveStatus::converged : SolveStatus::completed;
  return traj;
}

}  // namespace gestdyn
