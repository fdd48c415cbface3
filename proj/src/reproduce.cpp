#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "command_io.hpp"
#include "gestdyn/commands.hpp"

namespace gestdyn {

using namespace command_io;

namespace {

// Simulation setups behind the four shipped figure datasets.
constexpr double kStiffness = 2000.0;
const std::vector<double> kRatioGrid = {0.0, 0.25, 0.5, 0.75, 0.95};

struct DatasetWriter {
  std::filesystem::path dir;
  Json manifest_entries = Json::array();

  void note(const std::string& panel, const std::string& file,
            const std::string& description) {
    manifest_entries.push_back(
        Json{{"panel", panel}, {"file", file}, {"description", description}});
  }

  void finish(int figure) const {
    write_json_file(dir / "manifest.json",
                    Json{{"figure", figure}, {"datasets", manifest_entries}});
  }
};

void write_force_csv(const std::filesystem::path& path, const ForceProfile& profile) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(profile.x.size());
  for (std::size_t i = 0; i < profile.x.size(); ++i) {
    rows.push_back(
        {csv::format_double(profile.x[i]), csv::format_double(profile.f_linear[i]),
         csv::format_double(profile.f_cubic[i]), csv::format_double(profile.f_sum[i])});
  }
  csv::write_file(path, {"x", "f_linear", "f_cubic", "f_sum"}, rows);
}

// Long-format trajectory file: one labelled series per parameter value.
void write_trajectory_series(const std::filesystem::path& path, const std::string& label,
                             std::span<const double> values,
                             const std::function<Trajectory(double)>& run) {
  std::vector<std::vector<std::string>> rows;
  for (const double value : values) {
    const Trajectory traj = run(value);
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
      rows.push_back({csv::format_double(value), csv::format_double(traj.t[i]),
                      csv::format_double(traj.x[i]), csv::format_double(traj.v[i])});
    }
  }
  csv::write_file(path, {label, "t", "x", "v"}, rows);
}

GestureParams proportional_params(double d) {
  GestureParams params;
  params.k = kStiffness;
  params.d = d;
  params.scaling = ScalingMode::proportional;
  return params;
}

Trajectory run_gesture(GestureParams params, double x0) {
  SimConfig cfg;
  cfg.x0 = x0;
  return integrate(params, cfg);
}

void reproduce_figure1(DatasetWriter& out, int jobs) {
  GestureParams force_params;
  force_params.k = 1.0;
  force_params.d = 0.95;
  write_force_csv(out.dir / "forces.csv",
                  force_profile(force_params, 1.0, -1.5, 1.5, 301));
  out.note("top_left", "forces.csv",
           "linear, cubic, and summed restoring force components, k=1, d=0.95");

  write_trajectory_series(
      out.dir / "trajectories.csv", "d", std::vector<double>{0.0, 0.95},
      [](double d) { return run_gesture(proportional_params(d), 1.0); });
  out.note("top_right", "trajectories.csv",
           "position/velocity trajectories for the linear (d=0) and cubic (d=0.95) "
           "models, k=2000, x0=1, T=0");

  const auto ks = log_spaced(500.0, 8000.0, 20);
  std::vector<std::vector<std::string>> rows, log_rows;
  for (const double d : kRatioGrid) {
    SimConfig cfg;
    cfg.x0 = 1.0;
    const auto records = sweep_stiffness(ks, proportional_params(d), cfg, jobs);
    for (const SweepRecord& rec : records) {
      rows.push_back({csv::format_double(d), csv::format_double(rec.value),
                      csv::format_double(rec.summary.t_pv),
                      csv::format_double(rec.summary.pv)});
      log_rows.push_back({csv::format_double(d),
                          csv::format_double(std::log(rec.value)),
                          csv::format_double(std::log(rec.summary.t_pv)),
                          csv::format_double(std::log(rec.summary.pv))});
    }
  }
  csv::write_file(out.dir / "power_table.csv", {"d", "k", "t_pv", "pv"}, rows);
  out.note("bottom_left", "power_table.csv",
           "time-to-peak velocity and peak velocity across 20 log-spaced k in "
           "[500, 8000] for five d values, x0=1, T=0");
  csv::write_file(out.dir / "power_table_log.csv", {"d", "ln_k", "ln_t_pv", "ln_pv"},
                  log_rows);
  out.note("bottom_right", "power_table_log.csv",
           "natural logarithms of the power table, linear in a log-log plot");
}

void reproduce_figure2(DatasetWriter& out, int jobs) {
  write_trajectory_series(
      out.dir / "trajectories_by_d.csv", "d", kRatioGrid,
      [](double d) { return run_gesture(proportional_params(d), 1.0); });
  out.note("top_left", "trajectories_by_d.csv",
           "trajectories for d in {0..0.95}, proportional scaling, k=2000, x0=1, T=0");

  const auto targets = lin_spaced(0.0, 0.8, 5);
  write_trajectory_series(out.dir / "trajectories_by_target.csv", "T", targets,
                          [](double target) {
                            GestureParams params = proportional_params(0.95);
                            params.target = target;
                            return run_gesture(params, 1.0);
                          });
  out.note("top_right", "trajectories_by_target.csv",
           "trajectories for T in {0, 0.2, .., 0.8}, d=0.95, k=2000, x0=1");

  SimConfig cfg;
  cfg.x0 = 1.0;
  const auto records = sweep_targets(targets, proportional_params(0.95), cfg, jobs);
  csv::write_file(out.dir / "records_by_target.csv", kRecordHeader,
                  record_rows(records));
  out.note("top_right", "records_by_target.csv",
           "kinematic landmarks for the target sweep");

  std::vector<std::vector<std::string>> force_rows;
  for (const double d : kRatioGrid) {
    GestureParams params;
    params.k = 1.0;
    params.d = d;
    const ForceProfile profile = force_profile(params, 1.0, -1.5, 1.5, 301);
    for (std::size_t i = 0; i < profile.x.size(); ++i) {
      force_rows.push_back(
          {csv::format_double(d), csv::format_double(profile.x[i]),
           csv::format_double(profile.f_linear[i]),
           csv::format_double(profile.f_cubic[i]),
           csv::format_double(profile.f_sum[i])});
    }
  }
  csv::write_file(out.dir / "forces_by_d.csv",
                  {"d", "x", "f_linear", "f_cubic", "f_sum"}, force_rows);
  out.note("bottom_left", "forces_by_d.csv",
           "restoring force components for each d, k=1, T=0");

  GestureParams wide;
  wide.k = 1.0;
  wide.d = 0.95;
  write_force_csv(out.dir / "forces_unscaled_range10.csv",
                  force_profile(wide, 1.0, -10.0, 10.0, 401));
  out.note("bottom_right", "forces_unscaled_range10.csv",
           "unscaled d=0.95 restoring forces over [-10, 10], k=1: the cubic term "
           "dominates");
}

void reproduce_figure3(DatasetWriter& out, int jobs) {
  std::vector<std::vector<std::string>> curve_rows;
  for (int i = 0; i <= 90; ++i) {
    const double distance = 0.1 + i * 0.01;
    const EffectiveCoefficient coeff = scale_local(0.95, 1.0, distance, 0.0, 3);
    curve_rows.push_back(
        {csv::format_double(distance), csv::format_double(coeff.value)});
  }
  csv::write_file(out.dir / "inverse_square_curve.csv", {"distance", "d_eff"},
                  curve_rows);
  out.note("top_left", "inverse_square_curve.csv",
           "effective coefficient against movement distance for d=0.95, k=1: an "
           "inverse-square curve");

  write_trajectory_series(out.dir / "trajectories_by_d_distance10.csv", "d", kRatioGrid,
                          [](double d) {
                            GestureParams params;
                            params.k = kStiffness;
                            params.d = d;
                            params.scaling = ScalingMode::local;
                            return run_gesture(params, 10.0);
                          });
  out.note("top_right", "trajectories_by_d_distance10.csv",
           "locally scaled trajectories for d in {0..0.95}, x0=10, T=0, k=2000");

  {
    GestureParams params;
    params.k = kStiffness;
    params.scaling = ScalingMode::local;
    SimConfig cfg;
    cfg.x0 = 10.0;
    const auto records =
        sweep_parameter(SweepParam::ratio, kRatioGrid, params, cfg, jobs);
    csv::write_file(out.dir / "records_by_d_distance10.csv", kRecordHeader,
                    record_rows(records));
    out.note("top_right", "records_by_d_distance10.csv",
             "kinematic landmarks for the locally scaled d sweep");
  }

  GestureParams unscaled;
  unscaled.k = 1.0;
  unscaled.d = 0.95;
  write_force_csv(out.dir / "forces_unscaled_range10.csv",
                  force_profile(unscaled, 1.0, -10.0, 10.0, 401));
  out.note("bottom_left", "forces_unscaled_range10.csv",
           "unscaled d=0.95 restoring forces over [-10, 10], k=1");

  GestureParams scaled = unscaled;
  scaled.scaling = ScalingMode::local;
  write_force_csv(out.dir / "forces_scaled_range10.csv",
                  force_profile(scaled, 10.0, -10.0, 10.0, 401));
  out.note("bottom_right", "forces_scaled_range10.csv",
           "the same forces under inverse-square scaling at distance 10");
}

void reproduce_figure4(DatasetWriter& out, int jobs) {
  GestureParams local;
  local.k = kStiffness;
  local.d = 0.95;
  local.scaling = ScalingMode::local;

  const auto targets_small = lin_spaced(0.0, 0.8, 5);
  write_trajectory_series(out.dir / "trajectories_local_targets.csv", "T",
                          targets_small, [&](double target) {
                            GestureParams params = local;
                            params.target = target;
                            return run_gesture(params, 1.0);
                          });
  out.note("top_left", "trajectories_local_targets.csv",
           "locally scaled trajectories across targets in [0, 0.8], x0=1, d=0.95, "
           "k=2000: identical time-to-peak velocity");

  {
    SimConfig cfg;
    cfg.x0 = 1.0;
    const auto records = sweep_targets(targets_small, local, cfg, jobs);
    csv::write_file(out.dir / "records_local_targets.csv", kRecordHeader,
                    record_rows(records));
    out.note("top_left", "records_local_targets.csv",
             "kinematic landmarks for the local target sweep");
  }

  {
    std::vector<std::vector<std::string>> force_rows;
    for (const double target : targets_small) {
      GestureParams params = local;
      params.target = target;
      const ForceProfile profile = force_profile(params, 1.0, -0.2, 1.2, 281);
      for (std::size_t i = 0; i < profile.x.size(); ++i) {
        force_rows.push_back(
            {csv::format_double(target), csv::format_double(profile.x[i]),
             csv::format_double(profile.f_linear[i]),
             csv::format_double(profile.f_cubic[i]),
             csv::format_double(profile.f_sum[i])});
      }
    }
    csv::write_file(out.dir / "forces_local_targets.csv",
                    {"T", "x", "f_linear", "f_cubic", "f_sum"}, force_rows);
    out.note("top_right", "forces_local_targets.csv",
             "per-target scaled restoring forces for the sweep above");
  }

  {
    // Wider-range companion to the top-left panel: the scaled model keeps
    // time-to-peak velocity constant from 0.1 to 10 position units.
    SimConfig cfg;
    GestureParams params = local;
    const std::vector<double> distances = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    const auto records =
        sweep_parameter(SweepParam::start, distances, params, cfg, jobs);
    csv::write_file(out.dir / "records_local_distances.csv", kRecordHeader,
                    record_rows(records));
    out.note("top_left", "records_local_distances.csv",
             "local scaling across movement distances 0.1 to 10 (x0 sweep, T=0): "
             "constant time-to-peak velocity, peak velocity proportional to distance");
  }

  const auto targets_wide = lin_spaced(0.0, 8.0, 9);
  for (const auto& [range, stem, panel, description] :
       {std::tuple{10.0, std::string("global_targets"), std::string("bottom_left"),
                   std::string("globally scaled sweep, D=10, x0=10: nonlinear "
                               "distance/time-to-peak relation restored")},
        std::tuple{8.0, std::string("restricted_targets"), std::string("bottom_right"),
                   std::string("restricted range D=8, x0=10: constant time-to-peak "
                               "velocity for distances >= 8, nonlinear below")}}) {
    GestureParams params = local;
    params.scaling = ScalingMode::global;
    params.range = range;

    SimConfig cfg;
    cfg.x0 = 10.0;
    const auto records = sweep_targets(targets_wide, params, cfg, jobs);
    csv::write_file(out.dir / ("records_" + stem + ".csv"), kRecordHeader,
                    record_rows(records));
    out.note(panel, "records_" + stem + ".csv", description);

    write_trajectory_series(out.dir / ("trajectories_" + stem + ".csv"), "T",
                            targets_wide, [&](double target) {
                              GestureParams p = params;
                              p.target = target;
                              return run_gesture(p, 10.0);
                            });
    out.note(panel, "trajectories_" + stem + ".csv",
             "trajectories behind " + stem + " records");
  }
}

}  // namespace

int cmd_reproduce(const CommandOptions& opts, int figure) {
  try {
    if (figure < 1 || figure > 4) {
      std::cerr << "error: figure id must be 1..4, got " << figure << '\n';
      return kExitConfigError;
    }
    DatasetWriter out;
    out.dir = opts.out_dir / ("figure" + std::to_string(figure));
    std::filesystem::create_directories(out.dir);

    switch (figure) {
      case 1: reproduce_figure1(out, opts.jobs); break;
      case 2: reproduce_figure2(out, opts.jobs); break;
      case 3: reproduce_figure3(out, opts.jobs); break;
      case 4: reproduce_figure4(out, opts.jobs); break;
    }
    out.finish(figure);
    return kExitOk;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiverged;
  }
}

}  // namespace gestdyn
