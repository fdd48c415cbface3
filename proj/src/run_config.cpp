#include "gestdyn/run_config.hpp"

#include <fstream>
#include <set>

#include "gestdyn/analysis.hpp"
#include "gestdyn/errors.hpp"

namespace gestdyn {

namespace {

void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw ParameterError("unknown key '" + context + key + "'");
    }
  }
}

const Json* find_section(const Json& config, const char* name) {
  if (!config.is_object()) {
    throw ParameterError("config root must be a JSON object");
  }
  auto it = config.find(name);
  if (it == config.end()) return nullptr;
  if (!it->is_object()) {
    throw ParameterError(std::string("section '") + name + "' must be an object");
  }
  return &*it;
}

double get_number(const Json& obj, const char* key, double fallback,
                  const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) {
    throw ParameterError("'" + context + key + "' must be a number");
  }
  return it->get<double>();
}

std::optional<double> get_optional_number(const Json& obj, const char* key,
                                          const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  if (!it->is_number()) {
    throw ParameterError("'" + context + key + "' must be a number");
  }
  return it->get<double>();
}

int get_int(const Json& obj, const char* key, int fallback, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) {
    throw ParameterError("'" + context + key + "' must be an integer");
  }
  return it->get<int>();
}

std::string get_string(const Json& obj, const char* key, const std::string& fallback,
                       const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string()) {
    throw ParameterError("'" + context + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::vector<double> get_number_array(const Json& node, const std::string& context) {
  if (!node.is_array()) {
    throw ParameterError("'" + context + "' must be an array of numbers");
  }
  std::vector<double> values;
  values.reserve(node.size());
  for (const auto& item : node) {
    if (!item.is_number()) {
      throw ParameterError("'" + context + "' must contain only numbers");
    }
    values.push_back(item.get<double>());
  }
  return values;
}

Bounds get_bounds(const Json& node, const std::string& context) {
  const auto values = get_number_array(node, context);
  if (values.size() != 2) {
    throw ParameterError("'" + context + "' must be a [lo, hi] pair");
  }
  return {values[0], values[1]};
}

}  // namespace

Json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParameterError("cannot open config file: " + path.string());
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParameterError("config file " + path.string() + ": " + e.what());
  }
}

void apply_override(Json& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ParameterError("--set expects path.to.key=value, got '" +
                         std::string(assignment) + "'");
  }
  const std::string path(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));

  Json value;
  try {
    value = Json::parse(raw);
  } catch (const Json::parse_error&) {
    value = raw;  // bare strings like proportional stay strings
  }

  Json* node = &config;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) {
      throw ParameterError("--set path has an empty segment: '" + path + "'");
    }
    if (dot == std::string::npos) {
      (*node)[key] = value;
      break;
    }
    Json& child = (*node)[key];
    if (child.is_null()) child = Json::object();
    if (!child.is_object()) {
      throw ParameterError("--set path '" + path + "' descends into a non-object");
    }
    node = &child;
    start = dot + 1;
  }
}

void check_known_sections(const Json& config) {
  if (!config.is_object()) {
    throw ParameterError("config root must be a JSON object");
  }
  reject_unknown_keys(config,
                      {"model", "sim", "output", "sweep", "forces", "powerlaw", "fit"},
                      "");
}

GestureParams parse_model_section(const Json& config) {
  GestureParams params;
  if (const Json* model = find_section(config, "model")) {
    reject_unknown_keys(*model, {"m", "k", "d", "scaling", "n", "D"}, "model.");
    params.m = get_number(*model, "m", params.m, "model.");
    params.k = get_number(*model, "k", params.k, "model.");
    params.d = get_number(*model, "d", params.d, "model.");
    params.scaling = parse_scaling_mode(
        get_string(*model, "scaling", to_string(params.scaling), "model."));
    params.n = get_int(*model, "n", params.n, "model.");
    params.range = get_optional_number(*model, "D", "model.");
  }
  return params;  // target comes from the sim section
}

SimConfig parse_sim_section(const Json& config) {
  SimConfig cfg;
  if (const Json* sim = find_section(config, "sim")) {
    reject_unknown_keys(
        *sim, {"x0", "v0", "T", "t_end", "dt_out", "rtol", "atol", "guard"}, "sim.");
    cfg.x0 = get_number(*sim, "x0", cfg.x0, "sim.");
    cfg.v0 = get_number(*sim, "v0", cfg.v0, "sim.");
    cfg.t_end = get_optional_number(*sim, "t_end", "sim.");
    cfg.dt_out = get_number(*sim, "dt_out", cfg.dt_out, "sim.");
    cfg.rtol = get_number(*sim, "rtol", cfg.rtol, "sim.");
    cfg.atol = get_number(*sim, "atol", cfg.atol, "sim.");
    cfg.guard = get_optional_number(*sim, "guard", "sim.");
  }
  return cfg;
}

OutputSpec parse_output_section(const Json& config) {
  OutputSpec spec;
  if (const Json* output = find_section(config, "output")) {
    reject_unknown_keys(*output, {"format", "path"}, "output.");
    spec.format = get_string(*output, "format", spec.format, "output.");
    spec.path = get_string(*output, "path", spec.path, "output.");
    if (spec.format != "csv" && spec.format != "json") {
      throw ParameterError("output.format must be csv or json, got '" + spec.format +
                           "'");
    }
  }
  return spec;
}

SweepSpec parse_sweep_section(const Json& config) {
  const Json* sweep = find_section(config, "sweep");
  if (!sweep) {
    throw ParameterError("sweep command needs a 'sweep' config section");
  }
  reject_unknown_keys(*sweep, {"parameter", "values", "range"}, "sweep.");

  SweepSpec spec;
  spec.parameter = get_string(*sweep, "parameter", "", "sweep.");
  if (spec.parameter.empty()) {
    throw ParameterError("sweep.parameter is required (one of k, T, d, x0)");
  }
  parse_sweep_param(spec.parameter);

  const bool has_values = sweep->contains("values");
  const bool has_range = sweep->contains("range");
  if (has_values == has_range) {
    throw ParameterError("sweep needs exactly one of 'values' or 'range'");
  }
  if (has_values) {
    spec.values = get_number_array((*sweep)["values"], "sweep.values");
  } else {
    const Json& range = (*sweep)["range"];
    if (!range.is_object()) {
      throw ParameterError("sweep.range must be an object");
    }
    reject_unknown_keys(range, {"from", "to", "count", "spacing"}, "sweep.range.");
    const auto from = get_optional_number(range, "from", "sweep.range.");
    const auto to = get_optional_number(range, "to", "sweep.range.");
    if (!from || !to) {
      throw ParameterError("sweep.range needs 'from' and 'to'");
    }
    const int count = get_int(range, "count", 10, "sweep.range.");
    const std::string spacing = get_string(range, "spacing", "linear", "sweep.range.");
    if (spacing == "linear") {
      spec.values = lin_spaced(*from, *to, count);
    } else if (spacing == "log") {
      spec.values = log_spaced(*from, *to, count);
    } else {
      throw ParameterError("sweep.range.spacing must be linear or log");
    }
  }
  if (spec.values.empty()) {
    throw ParameterError("sweep value list is empty");
  }
  return spec;
}

ForcesSpec parse_forces_section(const Json& config) {
  ForcesSpec spec;
  if (const Json* forces = find_section(config, "forces")) {
    reject_unknown_keys(*forces, {"x_min", "x_max", "n_points"}, "forces.");
    spec.x_min = get_number(*forces, "x_min", spec.x_min, "forces.");
    spec.x_max = get_number(*forces, "x_max", spec.x_max, "forces.");
    spec.n_points = get_int(*forces, "n_points", spec.n_points, "forces.");
  }
  return spec;
}

PowerLawSpec parse_powerlaw_section(const Json& config) {
  PowerLawSpec spec;
  if (const Json* pl = find_section(config, "powerlaw")) {
    reject_unknown_keys(*pl, {"k_from", "k_to", "k_count", "d_values"}, "powerlaw.");
    spec.k_from = get_number(*pl, "k_from", spec.k_from, "powerlaw.");
    spec.k_to = get_number(*pl, "k_to", spec.k_to, "powerlaw.");
    spec.k_count = get_int(*pl, "k_count", spec.k_count, "powerlaw.");
    if (pl->contains("d_values")) {
      spec.d_values = get_number_array((*pl)["d_values"], "powerlaw.d_values");
      if (spec.d_values.empty()) {
        throw ParameterError("powerlaw.d_values is empty");
      }
    }
  }
  return spec;
}

FitSpec parse_fit_section(const Json& config) {
  const Json* fit = find_section(config, "fit");
  if (!fit) {
    throw ParameterError("fit command needs a 'fit' config section");
  }
  reject_unknown_keys(*fit,
                      {"data", "free", "k_bounds", "d_bounds", "T_bounds", "k_init",
                       "d_init", "T_init", "w_v"},
                      "fit.");

  FitSpec spec;
  spec.data_path = get_string(*fit, "data", "", "fit.");
  if (spec.data_path.empty()) {
    throw ParameterError("fit.data (observed CSV path) is required");
  }
  if (fit->contains("free")) {
    const Json& free = (*fit)["free"];
    if (!free.is_array() || free.empty()) {
      throw ParameterError("fit.free must be a non-empty array of parameter names");
    }
    spec.free_params.clear();
    for (const auto& item : free) {
      if (!item.is_string()) {
        throw ParameterError("fit.free must contain strings");
      }
      const std::string name = item.get<std::string>();
      if (name != "k" && name != "d" && name != "T") {
        throw ParameterError("fit.free entries must be k, d, or T; got '" + name + "'");
      }
      spec.free_params.push_back(name);
    }
  }
  if (fit->contains("k_bounds")) {
    spec.k_bounds = get_bounds((*fit)["k_bounds"], "fit.k_bounds");
  }
  if (fit->contains("d_bounds")) {
    spec.d_bounds = get_bounds((*fit)["d_bounds"], "fit.d_bounds");
  }
  if (fit->contains("T_bounds")) {
    spec.target_bounds = get_bounds((*fit)["T_bounds"], "fit.T_bounds");
  }
  spec.k_init = get_number(*fit, "k_init", spec.k_init, "fit.");
  spec.d_init = get_number(*fit, "d_init", spec.d_init, "fit.");
  spec.target_init = get_optional_number(*fit, "T_init", "fit.");
  spec.w_v = get_number(*fit, "w_v", spec.w_v, "fit.");
  return spec;
}

}  // namespace gestdyn
