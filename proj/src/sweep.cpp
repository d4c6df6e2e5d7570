#include "stacknash/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "stacknash/errors.hpp"
#include "stacknash/parallel.hpp"
#include "stacknash/valuation.hpp"

namespace stacknash {

void validate_sweep(const SweepSpec& spec) {
  if (!std::isfinite(spec.from) || !std::isfinite(spec.to) || !(spec.from < spec.to)) {
    throw InvalidParams("sweep range needs finite from < to");
  }
  if (spec.steps < 2) throw InvalidParams("sweep needs at least 2 steps");
  require_valid(spec.base);
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  std::vector<double> grid(spec.steps);
  const double span = spec.to - spec.from;
  const double last = static_cast<double>(spec.steps - 1);
  for (std::size_t k = 0; k < spec.steps; ++k) {
    grid[k] = spec.from + span * (static_cast<double>(k) / last);
  }
  grid.back() = spec.to;
  return grid;
}

namespace {

SweepRow evaluate(const SweepSpec& spec, double value) {
  SweepRow row;
  row.value = value;
  ModelParams params = spec.base;
  parameter_ref(params, spec.parameter) = value;
  try {
    const Equilibrium eq = solve(params);
    row.sensitivity = analytic_sensitivity(params, eq, spec.parameter);
    row.f1_idx = welfare_index(params, eq, Reinsurer::One);
    row.f2_idx = welfare_index(params, eq, Reinsurer::Two);
    row.equilibrium = eq;
  } catch (const NoEquilibrium&) {
    row.status = "no-equilibrium";
  } catch (const InvalidParams&) {
    row.status = "invalid-params";
  } catch (const DegenerateDenominator&) {
    row.status = "degenerate-denominator";
  } catch (const SolverFailure&) {
    row.status = "solver-failure";
  }
  return row;
}

void append_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  out += buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate_sweep(spec);
  const std::vector<double> grid = sweep_grid(spec);
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) { rows[k] = evaluate(spec, grid[k]); });
  return rows;
}

std::size_t failed_rows(const std::vector<SweepRow>& rows) noexcept {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.equilibrium; }));
}

std::string render_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepHeader);
  out += "\r\n";
  for (const SweepRow& r : rows) {
    append_number(out, r.value);
    if (!r.equilibrium) {
      out += ',';
      out += r.status;
      out += ",,,,,,,,,,\r\n";
      continue;
    }
    const Equilibrium& eq = *r.equilibrium;
    const double fields[] = {eq.theta_star.theta1,   eq.theta_star.theta2, eq.p_star.p1,
                             eq.p_star.p2,           eq.f0_rate,           r.f1_idx,
                             r.f2_idx,               r.sensitivity.d_theta1, r.sensitivity.d_theta2,
                             r.sensitivity.d_p1,     r.sensitivity.d_p2};
    for (double v : fields) {
      out += ',';
      append_number(out, v);
    }
    out += "\r\n";
  }
  return out;
}

const std::vector<FigureSpec>& figure_specs() {
  static const std::vector<FigureSpec> specs = [] {
    std::vector<FigureSpec> s;
    for (const char* kind : {"p", "theta"}) {
      for (Parameter q : kAllParameters) {
        s.push_back({std::string("fig_") + kind + "_" + std::string(parameter_name(q)), q});
      }
    }
    s.push_back({"fig_f_lambda1", Parameter::Lambda1});
    s.push_back({"fig_f_lambda2", Parameter::Lambda2});
    return s;
  }();
  return specs;
}

SweepSpec default_sweep(Parameter q, const ModelParams& base, std::size_t steps) {
  SweepSpec spec;
  spec.parameter = q;
  spec.base = base;
  spec.steps = steps;
  if (q == Parameter::Lambda1 || q == Parameter::Lambda2) {
    spec.from = 0.02;
    spec.to = 0.98;
    const double other = q == Parameter::Lambda1 ? base.lambda2 : base.lambda1;
    if (other > 0.0) spec.to = std::min(spec.to, 0.99 / other);
  } else {
    spec.from = 1.0;
    spec.to = 10.0;
  }
  return spec;
}

std::vector<std::filesystem::path> write_figures(const std::filesystem::path& dir,
                                                 const ModelParams& base) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const FigureSpec& fig : figure_specs()) {
    const std::string csv = render_csv(run_sweep(default_sweep(fig.parameter, base)));
    const auto path = dir / (fig.name + ".csv");
    std::ofstream out(path, std::ios::binary);
    out << csv;
    if (!out) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace stacknash
