#include "gestdyn/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>

#include "command_io.hpp"
#include "gestdyn/fit.hpp"

namespace gestdyn {

using namespace command_io;

namespace {

struct ParsedRun {
  GestureParams params;
  SimConfig cfg;
  OutputSpec output;
};

ParsedRun parse_run(const CommandOptions& opts) {
  check_known_sections(opts.config);
  ParsedRun run;
  run.params = parse_model_section(opts.config);
  run.cfg = parse_sim_section(opts.config);
  if (opts.config.is_object() && opts.config.contains("sim")) {
    const Json& sim = opts.config.at("sim");
    if (sim.contains("T")) {
      if (!sim.at("T").is_number()) {
        throw ParameterError("'sim.T' must be a number");
      }
      run.params.target = sim.at("T").get<double>();
    }
  }
  run.output = parse_output_section(opts.config);
  validate(run.params);
  validate(run.cfg);
  return run;
}

std::filesystem::path resolve_out(const CommandOptions& opts, const std::string& name) {
  std::filesystem::create_directories(opts.out_dir);
  return opts.out_dir / name;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiverged;
  }
}

}  // namespace

int cmd_simulate(const CommandOptions& opts) {
  return guarded([&] {
    ParsedRun run = parse_run(opts);
    const std::string name =
        run.output.path.empty()
            ? (run.output.format == "json" ? "trajectory.json" : "trajectory.csv")
            : run.output.path;
    const auto data_path = resolve_out(opts, name);
    auto meta_path = data_path;
    meta_path.replace_extension(".meta.json");

    const Trajectory traj = integrate(run.params, run.cfg);

    if (run.output.format == "json") {
      write_json_file(data_path, Json{{"t", traj.t}, {"x", traj.x}, {"v", traj.v}});
    } else {
      write_trajectory_csv(data_path, traj);
    }

    Json meta{{"status", to_string(traj.status)},
              {"effective_coefficient", coeff_to_json(traj.coeff)},
              {"model", model_to_json(run.params)},
              {"sim", sim_to_json(run.params, run.cfg)}};
    if (traj.status == SolveStatus::diverged) {
      meta["t_blowup"] = traj.t_blowup;
      write_json_file(meta_path, meta);
      std::cerr << "error: trajectory diverged at t = " << traj.t_blowup << " s\n";
      return kExitDiverged;
    }
    meta["summary"] = summary_to_json(summarize(traj));
    write_json_file(meta_path, meta);
    return kExitOk;
  });
}

int cmd_sweep(const CommandOptions& opts) {
  return guarded([&] {
    ParsedRun run = parse_run(opts);
    const SweepSpec spec = parse_sweep_section(opts.config);
    const SweepParam param = parse_sweep_param(spec.parameter);

    const auto records =
        sweep_parameter(param, spec.values, run.params, run.cfg, opts.jobs);

    const std::string name = run.output.path.empty() ? "sweep.csv" : run.output.path;
    csv::write_file(resolve_out(opts, name), kRecordHeader, record_rows(records));

    const bool any_usable =
        std::any_of(records.begin(), records.end(), [](const SweepRecord& r) {
          return r.status == RecordStatus::converged ||
                 r.status == RecordStatus::completed;
        });
    if (!any_usable) {
      std::cerr << "error: every sweep point diverged\n";
      return kExitDiverged;
    }
    return kExitOk;
  });
}

int cmd_forces(const CommandOptions& opts) {
  return guarded([&] {
    ParsedRun run = parse_run(opts);
    const ForcesSpec spec = parse_forces_section(opts.config);

    const ForceProfile profile =
        force_profile(run.params, run.cfg.x0, spec.x_min, spec.x_max, spec.n_points);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(profile.x.size());
    for (std::size_t i = 0; i < profile.x.size(); ++i) {
      rows.push_back({csv::format_double(profile.x[i]),
                      csv::format_double(profile.f_linear[i]),
                      csv::format_double(profile.f_cubic[i]),
                      csv::format_double(profile.f_sum[i])});
    }
    const std::string name = run.output.path.empty() ? "forces.csv" : run.output.path;
    csv::write_file(resolve_out(opts, name), {"x", "f_linear", "f_cubic", "f_sum"},
                    rows);
    return kExitOk;
  });
}

int cmd_powerlaw(const CommandOptions& opts) {
  return guarded([&] {
    ParsedRun run = parse_run(opts);
    const PowerLawSpec spec = parse_powerlaw_section(opts.config);
    const auto ks = log_spaced(spec.k_from, spec.k_to, spec.k_count);

    Json fits = Json::array();
    for (const double d : spec.d_values) {
      GestureParams params = run.params;
      params.d = d;
      validate(params);
      const auto records = sweep_stiffness(ks, params, run.cfg, opts.jobs);
      for (const auto quantity :
           {SweepQuantity::time_to_peak, SweepQuantity::peak_velocity}) {
        const char* label = quantity == SweepQuantity::time_to_peak ? "t_pv" : "pv";
        Json entry{{"d", d}, {"quantity", label}};
        try {
          const RecordFit fit = fit_records(records, quantity);
          entry["alpha"] = fit.fit.alpha;
          entry["exponent"] = fit.fit.exponent;
          entry["r2"] = fit.fit.r2;
          entry["n_used"] = fit.n_used;
          entry["n_dropped"] = fit.n_dropped;
        } catch (const ParameterError& e) {
          entry["error"] = e.what();  // degenerate fit flagged, not fatal
        }
        fits.push_back(std::move(entry));
      }
    }

    const std::string name = run.output.path.empty() ? "powerlaw.json" : run.output.path;
    write_json_file(resolve_out(opts, name), fits);
    return kExitOk;
  });
}

int cmd_fit(const CommandOptions& opts) {
  return guarded([&] {
    ParsedRun run = parse_run(opts);
    const FitSpec spec = parse_fit_section(opts.config);

    const csv::Table table = csv::read_file(spec.data_path);
    FitProblem problem;
    problem.t = table.numeric("t");
    problem.x = table.numeric("x");
    if (std::find(table.header.begin(), table.header.end(), "v") != table.header.end()) {
      problem.v = table.numeric("v");
    }

    problem.base = run.params;
    problem.fit_k = false;
    problem.fit_d = false;
    problem.fit_target = false;
    for (const std::string& name : spec.free_params) {
      if (name == "k") problem.fit_k = true;
      if (name == "d") problem.fit_d = true;
      if (name == "T") problem.fit_target = true;
    }
    problem.k_bounds = spec.k_bounds;
    problem.d_bounds = spec.d_bounds;
    problem.k_init = spec.k_init;
    problem.d_init = spec.d_init;
    problem.v0 = run.cfg.v0;
    problem.w_v = spec.w_v;

    if (problem.fit_target) {
      if (spec.target_bounds) {
        problem.target_bounds = *spec.target_bounds;
      } else {
        // Default: the observed position range, padded by half its width.
        const auto [lo, hi] = std::minmax_element(problem.x.begin(), problem.x.end());
        const double pad = 0.5 * std::max(*hi - *lo, 1e-6);
        problem.target_bounds = {*lo - pad, *hi + pad};
      }
      problem.target_init = spec.target_init ? *spec.target_init : problem.x.back();
    }

    const FitResult result = fit_gesture(problem);

    Json doc{{"k", result.k},
             {"d", result.d},
             {"T", result.target},
             {"rmse", result.rmse},
             {"iterations", result.iterations},
             {"converged", result.converged},
             {"free", spec.free_params}};
    const std::string name = run.output.path.empty() ? "fit.json" : run.output.path;
    write_json_file(resolve_out(opts, name), doc);
    return kExitOk;  // non-convergence is a data property, not a tool failure
  });
}

}  // namespace gestdyn
