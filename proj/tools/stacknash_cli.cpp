#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stacknash/best_response.hpp"
#include "stacknash/equilibrium.hpp"
#include "stacknash/errors.hpp"
#include "stacknash/mcsim.hpp"
#include "stacknash/params_json.hpp"
#include "stacknash/sensitivity.hpp"
#include "stacknash/sweep.hpp"
#include "stacknash/valuation.hpp"

namespace sn = stacknash;
using nlohmann::json;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitNoEquilibrium = 2;
constexpr int kExitCheckFailed = 3;

int report_error(const std::string& kind, const std::string& message, int code) {
  std::cout << json{{"error", message}, {"kind", kind}}.dump(2) << '\n';
  return code;
}

// Runs body and maps library errors onto exit codes.
template <typename Body>
int guarded(Body&& body) {
  try {
    return body();
  } catch (const sn::NoEquilibrium& e) {
    return report_error("NoEquilibrium", e.what(), kExitNoEquilibrium);
  } catch (const sn::InvalidParams& e) {
    return report_error("InvalidParams", e.what(), kExitInvalid);
  } catch (const sn::Error& e) {
    return report_error("Error", e.what(), kExitInvalid);
  } catch (const std::exception& e) {
    return report_error("Error", e.what(), kExitInvalid);
  }
}

int cmd_solve(const std::string& path) {
  return guarded([&] {
    const sn::ModelParams params = sn::load_params_file(path);
    const sn::Equilibrium eq = sn::solve(params);
    json out = sn::equilibrium_to_json(eq);
    out["f1_idx"] = sn::welfare_index(params, eq, sn::Reinsurer::One);
    out["f2_idx"] = sn::welfare_index(params, eq, sn::Reinsurer::Two);
    std::cout << out.dump(2) << '\n';
    return 0;
  });
}

struct SweepArgs {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  std::size_t steps = 50;
  std::string params_path;
  std::string out_path;
};

int cmd_sweep(const SweepArgs& args) {
  return guarded([&] {
    const auto q = sn::parse_parameter(args.param);
    if (!q) throw sn::InvalidParams("unknown sweep parameter '" + args.param + "'");
    sn::SweepSpec spec;
    spec.parameter = *q;
    spec.from = args.from;
    spec.to = args.to;
    spec.steps = args.steps;
    if (!args.params_path.empty()) spec.base = sn::load_params_file(args.params_path);

    const auto rows = sn::run_sweep(spec);
    const std::string csv = sn::render_csv(rows);
    if (args.out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(args.out_path, std::ios::binary);
      out << csv;
      if (!out) throw std::runtime_error("cannot write '" + args.out_path + "'");
    }
    if (sn::failed_rows(rows) == rows.size()) {
      std::cerr << "no grid point has an equilibrium\n";
      return kExitNoEquilibrium;
    }
    return 0;
  });
}

struct Check {
  std::string name;
  bool passed = false;
  json detail;
};

sn::Equilibrium tampered(const sn::ModelParams& params, sn::Equilibrium eq, double theta1) {
  eq.theta_star.theta1 = theta1;
  eq.p_star = sn::insurer_response(params.delta0, eq.theta_star);
  eq.residual = sn::fixed_point_residual(params, eq.theta_star);
  eq.f0_rate = sn::f0_rate(params, eq.theta_star);
  eq.f1_rate = sn::reinsurer_rate(params, eq.theta_star, sn::Reinsurer::One);
  eq.f2_rate = sn::reinsurer_rate(params, eq.theta_star, sn::Reinsurer::Two);
  return eq;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<Check> run_checks(const sn::ModelParams& params, const sn::Equilibrium& eq,
                              std::uint64_t seed, std::uint64_t paths) {
  std::vector<Check> checks;
  const auto add = [&](std::string name, bool ok, json detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const double residual = sn::fixed_point_residual(params, eq.theta_star);
  add("fixed_point_residual", residual <= 1e-10, {{"residual", residual}, {"limit", 1e-10}});

  add("admissible", sn::is_admissible(eq.theta_star) && sn::is_admissible(eq.p_star),
      {{"theta1", eq.theta_star.theta1}, {"theta2", eq.theta_star.theta2},
       {"p1", eq.p_star.p1}, {"p2", eq.p_star.p2}});

  const sn::CessionPair pbar = sn::insurer_response(params.delta0, eq.theta_star);
  const double cession_gap = std::abs(pbar.p1 - eq.p_star.p1) + std::abs(pbar.p2 - eq.p_star.p2);
  add("insurer_best_response", cession_gap <= 1e-12, {{"gap", cession_gap}});

  const sn::mc::DeviationReport dev = sn::mc::deviation_test(params, eq, 1e-3);
  add("no_improving_deviation", dev.passed(),
      {{"grid_step", dev.grid_step},
       {"worst_margin", dev.worst_margin()},
       {"improving", {dev.insurer.improving, dev.reinsurer1.improving, dev.reinsurer2.improving}}});

  // Closed-form value functions against the Gaussian terminal laws.
  const double v0 = sn::value_insurer(params, eq, 0.0, params.x0);
  const double g0 = sn::mc::gaussian_utility_insurer(params, eq.theta_star, eq.p_star, 0.0, params.x0);
  double values[3] = {v0, 0.0, 0.0};
  double worst_identity = relative_gap(g0, v0);
  for (sn::Reinsurer i : {sn::Reinsurer::One, sn::Reinsurer::Two}) {
    const double y = params.initial_surplus(i) - params.rival_weight(i) * params.initial_surplus(sn::rival(i));
    const double vi = sn::value_reinsurer(params, eq, i, 0.0, y);
    const double gi = sn::mc::gaussian_utility_reinsurer(params, eq.theta_star, i, 0.0, y);
    values[static_cast<int>(i)] = vi;
    worst_identity = std::max(worst_identity, relative_gap(gi, vi));
  }
  add("value_matches_gaussian_law", worst_identity <= 1e-10, {{"worst_relative_gap", worst_identity}});

  sn::mc::SimConfig sim;
  sim.paths = paths;
  sim.seed = seed;
  const sn::mc::UtilityReports mc = sn::mc::simulate_utilities(params, eq.theta_star, eq.p_star, sim);
  const sn::mc::SimReport* reports[3] = {&mc.insurer, &mc.reinsurer1, &mc.reinsurer2};
  const char* names[3] = {"insurer", "reinsurer1", "reinsurer2"};
  json mc_detail = json::object();
  bool mc_ok = true;
  for (int k = 0; k < 3; ++k) {
    const double z = std::abs(reports[k]->estimate - values[k]) / reports[k]->std_error;
    mc_ok = mc_ok && z <= 3.0;
    mc_detail[names[k]] = {{"estimate", reports[k]->estimate},
                           {"std_error", reports[k]->std_error},
                           {"closed_form", values[k]},
                           {"z", z}};
  }
  add("monte_carlo_within_3se", mc_ok, mc_detail);

  // Expected signs of d theta_i: positive in every risk aversion, negative in every lambda.
  json sens = json::object();
  bool signs_ok = true;
  for (sn::Parameter q : sn::kAllParameters) {
    const sn::ThetaSensitivity s = sn::theta_sensitivity(params, eq, q);
    const bool is_lambda = q == sn::Parameter::Lambda1 || q == sn::Parameter::Lambda2;
    const bool ok = is_lambda ? (s.d_theta1 < 0.0 && s.d_theta2 < 0.0)
                              : (s.d_theta1 > 0.0 && s.d_theta2 > 0.0);
    signs_ok = signs_ok && ok;
    sens[std::string(sn::parameter_name(q))] = {s.d_theta1, s.d_theta2};
  }
  add("sensitivity_signs", signs_ok, sens);
  return checks;
}

struct VerifyArgs {
  std::string params_path;
  std::uint64_t seed = 0;
  std::uint64_t paths = 100000;
  std::optional<double> tamper_theta1;
};

int cmd_verify(const VerifyArgs& args) {
  return guarded([&] {
    const sn::ModelParams params = sn::load_params_file(args.params_path);
    sn::Equilibrium eq = sn::solve(params);
    if (args.tamper_theta1) eq = tampered(params, eq, *args.tamper_theta1);

    const std::vector<Check> checks = run_checks(params, eq, args.seed, args.paths);
    json out;
    out["seed"] = args.seed;
    out["paths"] = args.paths;
    out["equilibrium"] = sn::equilibrium_to_json(eq);
    out["checks"] = json::array();
    bool all = true;
    for (const Check& c : checks) {
      out["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << '\n';
      all = all && c.passed;
    }
    out["passed"] = all;
    std::cout << out.dump(2) << '\n';
    return all ? 0 : kExitCheckFailed;
  });
}

int cmd_figures(const std::string& dir) {
  return guarded([&] {
    for (const auto& path : sn::write_figures(dir)) std::cerr << "wrote " << path.string() << '\n';
    return 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium solver for a two-layer reinsurance game"};
  app.require_subcommand(1);

  std::string solve_path;
  auto* solve = app.add_subcommand("solve", "Solve the equilibrium for a parameter file");
  solve->add_option("--params", solve_path, "JSON parameter file")->required();

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and write CSV");
  sweep->add_option("--param", sweep_args.param, "delta0|delta1|delta2|lambda1|lambda2")->required();
  sweep->add_option("--from", sweep_args.from, "First grid value")->required();
  sweep->add_option("--to", sweep_args.to, "Last grid value")->required();
  sweep->add_option("--steps", sweep_args.steps, "Number of grid points")->required();
  sweep->add_option("--params", sweep_args.params_path, "Base parameter file (defaults if omitted)");
  sweep->add_option("--out", sweep_args.out_path, "Output CSV (stdout if omitted)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check an equilibrium against independent oracles");
  verify->add_option("--params", verify_args.params_path, "JSON parameter file")->required();
  verify->add_option("--seed", verify_args.seed, "Monte Carlo seed")->required();
  verify->add_option("--paths", verify_args.paths, "Monte Carlo paths")->required();
  verify->add_option("--tamper-theta1", verify_args.tamper_theta1,
                     "Debug: replace theta1* before checking")
      ->group("");

  std::string figures_dir;
  auto* figures = app.add_subcommand("figures", "Write the 12 figure CSVs");
  figures->add_option("--out", figures_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  if (*solve) return cmd_solve(solve_path);
  if (*sweep) return cmd_sweep(sweep_args);
  if (*verify) return cmd_verify(verify_args);
  if (*figures) return cmd_figures(figures_dir);
  return kExitInvalid;
}
