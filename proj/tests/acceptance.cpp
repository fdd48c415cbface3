// Acceptance suite: runs the ten shipping criteria end to end and prints one
// pass/fail line per criterion. Takes the CLI binary path as argv[1] for the
// dataset-reproduction checks.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gestdyn/analysis.hpp"
#include "gestdyn/csv.hpp"
#include "gestdyn/fit.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;
using namespace gestdyn;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << name
            << "  [" << detail << "]\n";
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

GestureParams make_params(double k, double d, ScalingMode mode,
                          std::optional<double> range = std::nullopt,
                          double target = 0.0) {
  GestureParams params;
  params.k = k;
  params.d = d;
  params.scaling = mode;
  params.range = range;
  params.target = target;
  return params;
}

// --- criterion 1: solver vs closed form -----------------------------------

void criterion_1() {
  SimConfig cfg;
  cfg.x0 = 1.0;
  cfg.t_end = 0.5;
  const Trajectory num =
      integrate(make_params(2000.0, 0.0, ScalingMode::proportional), cfg);
  const Trajectory ref = integrate_linear_analytic(2000.0, 1.0, 0.0, 0.0, num.t);
  double max_err = 0.0;
  for (std::size_t i = 0; i < num.t.size(); ++i) {
    max_err = std::max(max_err, std::abs(num.x[i] - ref.x[i]));
  }
  report(1, "analytic-oracle agreement", max_err <= 1e-6,
         "max |x_num - x_ref| = " + fmt(max_err) + " <= 1e-6");
}

// --- criteria 2 + 3: stiffness power laws ----------------------------------

void criteria_2_3() {
  SimConfig cfg;
  cfg.x0 = 1.0;
  const auto ks = log_spaced(500.0, 8000.0, 20);

  const auto linear =
      sweep_stiffness(ks, make_params(2000.0, 0.0, ScalingMode::proportional), cfg);
  const auto cubic =
      sweep_stiffness(ks, make_params(2000.0, 0.95, ScalingMode::proportional), cfg);

  const PowerLawFit t_lin = fit_records(linear, SweepQuantity::time_to_peak).fit;
  const PowerLawFit t_cub = fit_records(cubic, SweepQuantity::time_to_peak).fit;
  const bool pass_2 = std::abs(t_lin.exponent + 0.5) <= 0.005 &&
                      std::abs(t_lin.alpha - 1.0) <= 0.01 &&
                      std::abs(t_cub.exponent + 0.5) <= 0.01 &&
                      std::abs(t_cub.alpha - 5.4) <= 0.15;
  report(2, "time-to-peak power law", pass_2,
         "d=0: alpha " + fmt(t_lin.alpha) + ", exp " + fmt(t_lin.exponent) +
             "; d=0.95: alpha " + fmt(t_cub.alpha) + ", exp " + fmt(t_cub.exponent));

  const PowerLawFit v_lin = fit_records(linear, SweepQuantity::peak_velocity).fit;
  const PowerLawFit v_cub = fit_records(cubic, SweepQuantity::peak_velocity).fit;
  const bool pass_3 = std::abs(v_lin.exponent - 0.5) <= 0.005 &&
                      std::abs(v_lin.alpha - 0.368) <= 0.004 &&
                      std::abs(v_cub.exponent - 0.5) <= 0.01 &&
                      std::abs(v_cub.alpha - 0.19) <= 0.01;
  report(3, "peak-velocity power law", pass_3,
         "d=0: alpha " + fmt(v_lin.alpha) + ", exp " + fmt(v_lin.exponent) +
             "; d=0.95: alpha " + fmt(v_cub.alpha) + ", exp " + fmt(v_cub.exponent));
}

// --- criterion 4: quasi-symmetry ------------------------------------------

void criterion_4() {
  SimConfig cfg;
  cfg.x0 = 1.0;
  const KinematicSummary cubic =
      summarize(integrate(make_params(2000.0, 0.95, ScalingMode::proportional), cfg));
  const KinematicSummary linear =
      summarize(integrate(make_params(2000.0, 0.0, ScalingMode::proportional), cfg));

  const double linear_ref = oracle::linear_symmetry(0.1);
  const bool pass = cubic.symmetry >= 0.45 && cubic.symmetry <= 0.55 &&
                    std::abs(linear.symmetry - linear_ref) <= 0.002;
  report(4, "quasi-symmetric velocity profile", pass,
         "d=0.95: " + fmt(cubic.symmetry) + " in [0.45, 0.55]; d=0: " +
             fmt(linear.symmetry) + " vs closed form " + fmt(linear_ref));
}

// --- criterion 5: local-scaling invariance ---------------------------------

void criterion_5() {
  SimConfig cfg;
  const std::vector<double> distances{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
  const auto records =
      sweep_parameter(SweepParam::start, distances,
                      make_params(2000.0, 0.95, ScalingMode::local), cfg);

  double t_min = records[0].summary.t_pv, t_max = t_min;
  std::vector<double> pvs;
  for (const auto& rec : records) {
    t_min = std::min(t_min, rec.summary.t_pv);
    t_max = std::max(t_max, rec.summary.t_pv);
    pvs.push_back(rec.summary.pv);
  }
  const auto origin = oracle::fit_through_origin(distances, pvs);
  const bool pass = (t_max - t_min) <= 1e-4 && origin.r2 > 0.9999;
  report(5, "local-scaling invariance", pass,
         "t_pv spread " + fmt(t_max - t_min) + " <= 1e-4; pv~distance r2 " +
             fmt(origin.r2));
}

// --- criterion 6: restricted-range regime ----------------------------------

void criterion_6() {
  SimConfig cfg;
  cfg.x0 = 10.0;
  const auto targets = lin_spaced(0.0, 8.0, 9);
  const auto records = sweep_targets(
      targets, make_params(2000.0, 0.95, ScalingMode::global, 8.0), cfg);

  // T in {0, 1, 2}: distance >= 8, lambda = 1, equal time-to-peak
  double band_min = records[0].summary.t_pv, band_max = band_min;
  for (int i = 0; i < 3; ++i) {
    band_min = std::min(band_min, records[i].summary.t_pv);
    band_max = std::max(band_max, records[i].summary.t_pv);
  }
  // T in {3..8}: distance < 8, time-to-peak strictly decreasing
  bool strictly_decreasing = true;
  for (int i = 3; i < 9; ++i) {
    if (records[i].summary.t_pv >= records[i - 1].summary.t_pv) {
      strictly_decreasing = false;
    }
  }
  const bool pass = (band_max - band_min) <= 1e-4 && strictly_decreasing;
  report(6, "restricted-range regime", pass,
         "lambda=1 band spread " + fmt(band_max - band_min) +
             " <= 1e-4; decreasing beyond: " +
             (strictly_decreasing ? "yes" : "no"));
}

// --- criterion 7: instability and its cure ---------------------------------

void criterion_7() {
  SimConfig cfg;
  cfg.x0 = 10.0;
  const Trajectory unstable =
      integrate(make_params(2000.0, 0.95, ScalingMode::proportional), cfg);
  const bool diverged = unstable.status == SolveStatus::diverged &&
                        unstable.t_blowup <= 20.0 / std::sqrt(2000.0);

  const Trajectory cured =
      integrate(make_params(2000.0, 0.95, ScalingMode::local), cfg);
  bool no_overshoot = cured.status == SolveStatus::converged;
  for (const double x : cured.x) {
    if (x < -0.01 * 10.0) no_overshoot = false;  // 1% of the movement distance
  }
  report(7, "instability reproduction and local-scaling cure",
         diverged && no_overshoot,
         std::string("proportional: ") + to_string(unstable.status) + " at t = " +
             fmt(unstable.t_blowup) + "; local: " + to_string(cured.status));
}

// --- criterion 8: basin guarantee ------------------------------------------

void criterion_8() {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> d_draw(1e-9, 1.0 - 1e-12);
  std::uniform_real_distribution<double> k_draw(100.0, 1e4);
  std::uniform_real_distribution<double> dist_draw(0.01, 100.0);
  std::uniform_real_distribution<double> range_draw(0.01, 200.0);

  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const double d = d_draw(rng);
    const double k = k_draw(rng);
    const double dist = dist_draw(rng);
    if (!(std::sqrt(k / scale_local(d, k, dist, 0.0, 3).value) > dist)) ++violations;
    const double global_value =
        scale_global(d, k, dist, 0.0, 3, range_draw(rng)).value;
    if (!(std::sqrt(k / global_value) > dist)) ++violations;
  }
  report(8, "basin-of-attraction guarantee", violations == 0,
         "violations: " + std::to_string(violations) + " / 20000 checks");
}

// --- criterion 9: fit round trip -------------------------------------------

void criterion_9() {
  std::mt19937 rng(555001);
  std::uniform_real_distribution<double> log_k(std::log(500.0), std::log(8000.0));
  std::uniform_real_distribution<double> d_draw(0.1, 0.9);

  bool pass = true;
  double worst_k_err = 0.0, worst_d_err = 0.0, slowest = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double k_true = std::exp(log_k(rng));
    const double d_true = d_draw(rng);

    SimConfig cfg;
    cfg.x0 = 10.0;
    const Trajectory traj =
        integrate(make_params(k_true, d_true, ScalingMode::global, 10.0), cfg);

    FitProblem problem;
    problem.t = traj.t;
    problem.x = traj.x;
    problem.base = traj.params;

    const auto start = std::chrono::steady_clock::now();
    const FitResult result = fit_gesture(problem);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    const double k_err = std::abs(result.k - k_true) / k_true;
    const double d_err = std::abs(result.d - d_true);
    worst_k_err = std::max(worst_k_err, k_err);
    worst_d_err = std::max(worst_d_err, d_err);
    slowest = std::max(slowest, seconds);
    if (k_err > 0.01 || d_err > 0.02 || seconds > 10.0) pass = false;
  }
  report(9, "fit round trip on 20 random draws", pass,
         "worst k error " + fmt(100.0 * worst_k_err) + "%, worst d error " +
             fmt(worst_d_err) + ", slowest fit " + fmt(slowest) + " s");
}

// --- criterion 10: figure datasets round-trip through CSV -------------------

struct EmittedFigures {
  fs::path root;
  bool complete = true;
  std::string detail;
};

EmittedFigures run_reproduce(const std::string& cli) {
  EmittedFigures out;
  out.root = fs::temp_directory_path() / "gestdyn_acceptance_figs";
  fs::remove_all(out.root);
  fs::create_directories(out.root);

  for (int figure = 1; figure <= 4; ++figure) {
    const std::string command =
        cli + " reproduce " + std::to_string(figure) + " --out " + out.root.string();
    const int status = std::system(command.c_str());
    if (status == -1 || WEXITSTATUS(status) != 0) {
      out.complete = false;
      out.detail = "reproduce " + std::to_string(figure) + " exited nonzero";
      return out;
    }
    // every manifest entry must point at a parseable, non-empty dataset
    const fs::path dir = out.root / ("figure" + std::to_string(figure));
    std::ifstream manifest_in(dir / "manifest.json");
    if (!manifest_in) {
      out.complete = false;
      out.detail = "missing manifest for figure " + std::to_string(figure);
      return out;
    }
    const auto manifest = nlohmann::json::parse(manifest_in);
    for (const auto& entry : manifest["datasets"]) {
      const fs::path file = dir / entry["file"].get<std::string>();
      if (file.extension() == ".csv") {
        const csv::Table table = csv::read_file(file);
        if (table.rows.empty()) {
          out.complete = false;
          out.detail = "empty dataset " + file.string();
          return out;
        }
      }
    }
  }
  return out;
}

Trajectory trajectory_from_rows(const csv::Table& table, double series_value,
                                const std::string& series_column) {
  const std::size_t series = table.column(series_column);
  const std::size_t t_col = table.column("t");
  const std::size_t x_col = table.column("x");
  const std::size_t v_col = table.column("v");
  Trajectory traj;
  traj.status = SolveStatus::converged;
  for (const auto& row : table.rows) {
    if (std::strtod(row[series].c_str(), nullptr) != series_value) continue;
    traj.t.push_back(std::strtod(row[t_col].c_str(), nullptr));
    traj.x.push_back(std::strtod(row[x_col].c_str(), nullptr));
    traj.v.push_back(std::strtod(row[v_col].c_str(), nullptr));
  }
  return traj;
}

void criterion_10(const std::string& cli) {
  const EmittedFigures figs = run_reproduce(cli);
  if (!figs.complete) {
    report(10, "figure datasets recompute criteria 2-6", false, figs.detail);
    return;
  }

  std::vector<std::string> problems;

  {  // criteria 2 + 3 from the emitted power table
    const csv::Table table = csv::read_file(figs.root / "figure1" / "power_table.csv");
    const auto ds = table.numeric("d");
    const auto ks = table.numeric("k");
    const auto t_pvs = table.numeric("t_pv");
    const auto pvs = table.numeric("pv");
    for (const double d_sel : {0.0, 0.95}) {
      std::vector<double> k_sel, t_sel, v_sel;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds[i] != d_sel) continue;
        k_sel.push_back(ks[i]);
        t_sel.push_back(t_pvs[i]);
        v_sel.push_back(pvs[i]);
      }
      const PowerLawFit t_fit = fit_power_law(k_sel, t_sel);
      const PowerLawFit v_fit = fit_power_law(k_sel, v_sel);
      if (d_sel == 0.0) {
        if (std::abs(t_fit.exponent + 0.5) > 0.005 || std::abs(t_fit.alpha - 1.0) > 0.01)
          problems.push_back("power table d=0 t_pv fit off");
        if (std::abs(v_fit.exponent - 0.5) > 0.005 ||
            std::abs(v_fit.alpha - 0.368) > 0.004)
          problems.push_back("power table d=0 pv fit off");
      } else {
        if (std::abs(t_fit.exponent + 0.5) > 0.01 || std::abs(t_fit.alpha - 5.4) > 0.15)
          problems.push_back("power table d=0.95 t_pv fit off");
        if (std::abs(v_fit.alpha - 0.19) > 0.01)
          problems.push_back("power table d=0.95 pv fit off");
      }
    }
  }

  {  // criterion 4 from the emitted trajectories
    const csv::Table table = csv::read_file(figs.root / "figure1" / "trajectories.csv");
    const double cubic = summarize(trajectory_from_rows(table, 0.95, "d")).symmetry;
    const double linear = summarize(trajectory_from_rows(table, 0.0, "d")).symmetry;
    if (cubic < 0.45 || cubic > 0.55) problems.push_back("re-read cubic symmetry off");
    if (std::abs(linear - oracle::linear_symmetry(0.1)) > 0.002)
      problems.push_back("re-read linear symmetry off");
  }

  {  // criterion 5 from the emitted local distance sweep
    const csv::Table table =
        csv::read_file(figs.root / "figure4" / "records_local_distances.csv");
    const auto dists = table.numeric("value");
    const auto t_pvs = table.numeric("t_pv");
    const auto pvs = table.numeric("pv");
    double lo = t_pvs[0], hi = t_pvs[0];
    for (const double t : t_pvs) {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    if (hi - lo > 1e-4) problems.push_back("re-read local t_pv spread off");
    if (oracle::fit_through_origin(dists, pvs).r2 <= 0.9999)
      problems.push_back("re-read pv~distance fit off");
  }

  {  // criterion 6 from the emitted restricted-range sweep
    const csv::Table table =
        csv::read_file(figs.root / "figure4" / "records_restricted_targets.csv");
    const auto t_pvs = table.numeric("t_pv");
    double lo = t_pvs[0], hi = t_pvs[0];
    for (int i = 0; i < 3; ++i) {
      lo = std::min(lo, t_pvs[i]);
      hi = std::max(hi, t_pvs[i]);
    }
    if (hi - lo > 1e-4) problems.push_back("re-read lambda=1 band spread off");
    for (int i = 3; i < 9; ++i) {
      if (t_pvs[i] >= t_pvs[i - 1]) {
        problems.push_back("re-read restricted band not decreasing");
        break;
      }
    }
  }

  std::string detail = "figures 1-4 emitted, schemas valid";
  if (!problems.empty()) {
    detail = problems.front();
    for (std::size_t i = 1; i < problems.size(); ++i) detail += "; " + problems[i];
  }
  report(10, "figure datasets recompute criteria 2-6", problems.empty(), detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-gestdyn-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];

  const auto start = std::chrono::steady_clock::now();
  criterion_1();
  criteria_2_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10(cli);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " ("
            << seconds << " s)\n";
  return g_failures == 0 ? 0 : 1;
}
