#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gestdyn/fit.hpp"
#include "gestdyn/model.hpp"
#include "gestdyn/solver.hpp"

namespace gestdyn {

using Json = nlohmann::ordered_json;

// Parses a config file; throws ParameterError with the parser's position
// info on malformed JSON.
Json load_config_file(const std::filesystem::path& path);

// Applies one `--set path.to.key=value` override. The value is parsed as
// JSON when possible and treated as a string otherwise.
void apply_override(Json& config, std::string_view assignment);

// Section parsers. Every parser rejects unknown keys and validates the
// resulting values against the domain type invariants.
GestureParams parse_model_section(const Json& config);
SimConfig parse_sim_section(const Json& config);

struct OutputSpec {
  std::string format = "csv";  // csv | json
  std::string path;            // empty: per-command default name
};
OutputSpec parse_output_section(const Json& config);

struct SweepSpec {
  std::string parameter;  // k | T | d | x0
  std::vector<double> values;
};
SweepSpec parse_sweep_section(const Json& config);

struct ForcesSpec {
  double x_min = -1.0;
  double x_max = 1.0;
  int n_points = 201;
};
ForcesSpec parse_forces_section(const Json& config);

struct PowerLawSpec {
  double k_from = 500.0;
  double k_to = 8000.0;
  int k_count = 20;
  std::vector<double> d_values{0.0, 0.25, 0.5, 0.75, 0.95};
};
PowerLawSpec parse_powerlaw_section(const Json& config);

struct FitSpec {
  std::string data_path;
  std::vector<std::string> free_params{"k", "d"};
  Bounds k_bounds{10.0, 1e5};
  Bounds d_bounds{0.0, 1.0 - 1e-6};
  std::optional<Bounds> target_bounds;
  double k_init = 1000.0;
  double d_init = 0.5;
  std::optional<double> target_init;
  double w_v = 0.0;
};
FitSpec parse_fit_section(const Json& config);

// Rejects keys outside the documented schema anywhere in the document.
void check_known_sections(const Json& config);

}  // namespace gestdyn
