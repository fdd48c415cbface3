// gestdyn: simulate articulatory gestures as damped nonlinear point
// attractors, sweep their parameters, and fit them to observed trajectories.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gestdyn/commands.hpp"
#include "gestdyn/errors.hpp"

namespace {

struct GlobalArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  int jobs = 0;
};

gestdyn::CommandOptions build_options(const GlobalArgs& args) {
  gestdyn::CommandOptions opts;
  opts.config = gestdyn::Json::object();
  if (!args.config_path.empty()) {
    opts.config = gestdyn::load_config_file(args.config_path);
  }
  for (const std::string& assignment : args.overrides) {
    gestdyn::apply_override(opts.config, assignment);
  }
  opts.out_dir = args.out_dir;
  opts.jobs = args.jobs;
  return opts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"task-dynamic gesture simulation and analysis"};
  app.require_subcommand(1);

  GlobalArgs args;
  app.add_option("--config", args.config_path, "JSON config file");
  app.add_option("--set", args.overrides,
                 "override a config value, e.g. --set model.k=4000 (repeatable; "
                 "flags win over file values)");
  app.add_option("--out", args.out_dir, "output directory (default: .)");
  app.add_option("--jobs", args.jobs,
                 "worker threads for sweeps (default: machine parallelism)");

  auto* simulate = app.add_subcommand("simulate", "integrate one gesture");
  auto* sweep = app.add_subcommand("sweep", "run a one-parameter sweep");
  auto* forces = app.add_subcommand("forces", "sample restoring-force profiles");
  auto* powerlaw =
      app.add_subcommand("powerlaw", "fit stiffness power laws from k sweeps");
  auto* fit = app.add_subcommand("fit", "fit gesture parameters to observed data");
  auto* reproduce =
      app.add_subcommand("reproduce", "emit a shipped figure dataset (id 1..4)");
  int figure = 0;
  reproduce->add_option("figure", figure, "figure id")->required();

  for (auto* sub : {simulate, sweep, forces, powerlaw, fit, reproduce}) {
    sub->fallthrough();  // global options may follow the subcommand name
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gestdyn::kExitConfigError;
  }

  try {
    const gestdyn::CommandOptions opts = build_options(args);
    if (simulate->parsed()) return gestdyn::cmd_simulate(opts);
    if (sweep->parsed()) return gestdyn::cmd_sweep(opts);
    if (forces->parsed()) return gestdyn::cmd_forces(opts);
    if (powerlaw->parsed()) return gestdyn::cmd_powerlaw(opts);
    if (fit->parsed()) return gestdyn::cmd_fit(opts);
    if (reproduce->parsed()) return gestdyn::cmd_reproduce(opts, figure);
  } catch (const gestdyn::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gestdyn::kExitConfigError;
  }
  return gestdyn::kExitConfigError;
}
