#pragma once

#include <span>
#include <vector>

#include "gestdyn/kinematics.hpp"

namespace gestdyn {

enum class SweepParam { stiffness, target, ratio, start };  // k, T, d, x0

SweepParam parse_sweep_param(std::string_view name);
const char* to_string(SweepParam param);

enum class RecordStatus { converged, completed, diverged, failed };

const char* to_string(RecordStatus status);

struct SweepRecord {
  double value = 0.0;  // swept parameter value
  KinematicSummary summary;
  EffectiveCoefficient coeff;
  RecordStatus status = RecordStatus::completed;
};

// One integration + summary per point; records sorted by swept value.
// Damping is re-derived as 2 sqrt(m k) inside every integration, and the
// effective coefficient is recomputed per point. Diverged or stalled points
// are flagged, never imputed. jobs <= 0 means hardware parallelism.
std::vector<SweepRecord> sweep_parameter(SweepParam param, std::span<const double> values,
                                         const GestureParams& base, const SimConfig& cfg,
                                         int jobs = 0);

std::vector<SweepRecord> sweep_stiffness(std::span<const double> ks,
                                         const GestureParams& base, const SimConfig& cfg,
                                         int jobs = 0);

std::vector<SweepRecord> sweep_targets(std::span<const double> targets,
                                       const GestureParams& base, const SimConfig& cfg,
                                       int jobs = 0);

struct PowerLawFit {
  double alpha = 0.0;     // y = alpha * x^exponent
  double exponent = 0.0;
  double r2 = 0.0;        // coefficient of determination of the log-log fit
};

// Ordinary least squares on (ln x, ln y); needs >= 3 strictly positive pairs.
PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys);

enum class SweepQuantity { time_to_peak, peak_velocity };

struct RecordFit {
  PowerLawFit fit;
  int n_used = 0;
  int n_dropped = 0;  // diverged/failed records excluded from the fit
};

RecordFit fit_records(std::span<const SweepRecord> records, SweepQuantity quantity);

std::vector<double> log_spaced(double lo, double hi, int count);
std::vector<double> lin_spaced(double lo, double hi, int count);

}  // namespace gestdyn
