#include "gestdyn/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "gestdyn/errors.hpp"

namespace gestdyn {

namespace {

// Runs fn(0..count-1) across a small worker pool. Results are written into
// index-addressed slots by the callers, so scheduling order never shows.
void parallel_for(int jobs, std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
  }
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        break;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

void apply_sweep_value(SweepParam param, double value, GestureParams& params,
                       SimConfig& cfg) {
  switch (param) {
    case SweepParam::stiffness: params.k = value; break;
    case SweepParam::target: params.target = value; break;
    case SweepParam::ratio: params.d = value; break;
    case SweepParam::start: cfg.x0 = value; break;
  }
}

}  // namespace

SweepParam parse_sweep_param(std::string_view name) {
  if (name == "k") return SweepParam::stiffness;
  if (name == "T") return SweepParam::target;
  if (name == "d") return SweepParam::ratio;
  if (name == "x0") return SweepParam::start;
  throw ParameterError("unknown sweep parameter '" + std::string(name) +
                       "' (expected one of k, T, d, x0)");
}

const char* to_string(SweepParam param) {
  switch (param) {
    case SweepParam::stiffness: return "k";
    case SweepParam::target: return "T";
    case SweepParam::ratio: return "d";
    case SweepParam::start: return "x0";
  }
  return "?";
}

const char* to_string(RecordStatus status) {
  switch (status) {
    case RecordStatus::converged: return "converged";
    case RecordStatus::completed: return "completed";
    case RecordStatus::diverged: return "diverged";
    case RecordStatus::failed: return "failed";
  }
  return "?";
}

std::vector<SweepRecord> sweep_parameter(SweepParam param, std::span<const double> values,
                                         const GestureParams& base, const SimConfig& cfg,
                                         int jobs) {
  if (values.empty()) {
    throw ParameterError("sweep needs at least one value");
  }

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  // Validate every point up front so a bad value is a config error,
  // not a mid-sweep surprise.
  for (const double value : sorted) {
    GestureParams p = base;
    SimConfig c = cfg;
    apply_sweep_value(param, value, p, c);
    validate(p);
    validate(c);
  }

  std::vector<SweepRecord> records(sorted.size());
  parallel_for(jobs, sorted.size(), [&](std::size_t i) {
    GestureParams p = base;
    SimConfig c = cfg;
    apply_sweep_value(param, sorted[i], p, c);

    SweepRecord& rec = records[i];
    rec.value = sorted[i];
    rec.coeff = effective_coefficient(p, c.x0);
    try {
      const Trajectory traj = integrate(p, c);
      if (traj.status == SolveStatus::diverged) {
        rec.status = RecordStatus::diverged;
      } else {
        rec.summary = summarize(traj);
        rec.status = traj.status == SolveStatus::converged ? RecordStatus::converged
                                                           : RecordStatus::completed;
      }
    } catch (const SolverError&) {
      rec.status = RecordStatus::failed;
    }
  });
  return records;
}

std::vector<SweepRecord> sweep_stiffness(std::span<const double> ks,
                                         const GestureParams& base, const SimConfig& cfg,
                                         int jobs) {
  return sweep_parameter(SweepParam::stiffness, ks, base, cfg, jobs);
}

std::vector<SweepRecord> sweep_targets(std::span<const double> targets,
                                       const GestureParams& base, const SimConfig& cfg,
                                       int jobs) {
  return sweep_parameter(SweepParam::target, targets, base, cfg, jobs);
}

PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw ParameterError("power-law fit needs matching x and y lengths");
  }
  if (xs.size() < 3) {
    throw ParameterError("power-law fit needs at least 3 points");
  }
  const std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw ParameterError("power-law fit requires strictly positive values");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }

  const double mean_x = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double mean_y = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = lx[i] - mean_x;
    const double dy = ly[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw ParameterError("power-law fit is degenerate: all x values equal");
  }

  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.alpha = std::exp(mean_y - fit.exponent * mean_x);
  if (syy == 0.0) {
    fit.r2 = 1.0;  // constant y fitted exactly by a zero slope
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = (ly[i] - mean_y) - fit.exponent * (lx[i] - mean_x);
      ss_res += r * r;
    }
    fit.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

RecordFit fit_records(std::span<const SweepRecord> records, SweepQuantity quantity) {
  std::vector<double> xs, ys;
  RecordFit result;
  for (const SweepRecord& rec : records) {
    if (rec.status == RecordStatus::diverged || rec.status == RecordStatus::failed) {
      ++result.n_dropped;
      continue;
    }
    xs.push_back(rec.value);
    ys.push_back(quantity == SweepQuantity::time_to_peak ? rec.summary.t_pv
                                                         : rec.summary.pv);
  }
  result.n_used = static_cast<int>(xs.size());
  result.fit = fit_power_law(xs, ys);
  return result;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw ParameterError("log spacing needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> values(count);
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  values.front() = lo;
  values.back() = hi;
  for (int i = 1; i + 1 < count; ++i) {
    values[i] = std::exp(std::log(lo) + i * step);
  }
  return values;
}

std::vector<double> lin_spaced(double lo, double hi, int count) {
  if (!(hi > lo) || count < 2) {
    throw ParameterError("linear spacing needs lo < hi and count >= 2");
  }
  std::vector<double> values(count);
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) {
    values[i] = (i == count - 1) ? hi : lo + i * step;
  }
  return values;
}

}  // namespace gestdyn
