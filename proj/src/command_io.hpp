#pragma once

// Shared serialization helpers for the CLI subcommands.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "gestdyn/analysis.hpp"
#include "gestdyn/csv.hpp"
#include "gestdyn/errors.hpp"
#include "gestdyn/run_config.hpp"

namespace gestdyn::command_io {

inline Json coeff_to_json(const EffectiveCoefficient& coeff) {
  return Json{{"value", coeff.value},
              {"lambda", coeff.lambda},
              {"mode", to_string(coeff.mode)}};
}

inline Json summary_to_json(const KinematicSummary& s) {
  Json j{{"pv", s.pv},
         {"t_pv", s.t_pv},
         {"t_onset", s.t_onset},
         {"t_offset", s.t_offset},
         {"settle", nullptr},
         {"symmetry", s.symmetry}};
  if (s.settle) j["settle"] = *s.settle;
  return j;
}

inline Json model_to_json(const GestureParams& p) {
  Json j{{"m", p.m},
         {"k", p.k},
         {"d", p.d},
         {"scaling", to_string(p.scaling)},
         {"n", p.n}};
  if (p.range) j["D"] = *p.range;
  return j;
}

// Resolved simulation settings: the defaults the run actually used.
inline Json sim_to_json(const GestureParams& p, const SimConfig& cfg) {
  const double t_end = cfg.t_end ? *cfg.t_end : 20.0 / std::sqrt(p.k);
  const double guard =
      cfg.guard ? *cfg.guard
                : 1e3 * std::max({std::abs(cfg.x0), std::abs(p.target), 1.0});
  return Json{{"x0", cfg.x0},   {"v0", cfg.v0},         {"T", p.target},
              {"t_end", t_end}, {"dt_out", cfg.dt_out}, {"rtol", cfg.rtol},
              {"atol", cfg.atol}, {"guard", guard}};
}

inline void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParameterError("cannot open file for writing: " + path.string());
  }
  out << doc.dump(2) << '\n';
}

inline void write_trajectory_csv(const std::filesystem::path& path,
                                 const Trajectory& traj) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(traj.t.size());
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    rows.push_back({csv::format_double(traj.t[i]), csv::format_double(traj.x[i]),
                    csv::format_double(traj.v[i])});
  }
  csv::write_file(path, {"t", "x", "v"}, rows);
}

inline const std::vector<std::string> kRecordHeader = {
    "value", "t_pv", "pv", "settle", "symmetry", "lambda", "d_eff", "status"};

inline std::vector<std::vector<std::string>> record_rows(
    std::span<const SweepRecord> records) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(records.size());
  const double nan = std::nan("");
  for (const SweepRecord& rec : records) {
    const bool usable =
        rec.status == RecordStatus::converged || rec.status == RecordStatus::completed;
    rows.push_back(
        {csv::format_double(rec.value),
         csv::format_double(usable ? rec.summary.t_pv : nan),
         csv::format_double(usable ? rec.summary.pv : nan),
         csv::format_double(usable && rec.summary.settle ? *rec.summary.settle : nan),
         csv::format_double(usable ? rec.summary.symmetry : nan),
         csv::format_double(rec.coeff.lambda), csv::format_double(rec.coeff.value),
         to_string(rec.status)});
  }
  return rows;
}

}  // namespace gestdyn::command_io
