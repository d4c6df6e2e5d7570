#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stacknash/equilibrium.hpp"
#include "stacknash/model.hpp"
#include "stacknash/sensitivity.hpp"

namespace stacknash {

inline constexpr std::string_view kSweepHeader =
    "param,theta1,theta2,p1,p2,f0_rate,f1_idx,f2_idx,dtheta1,dtheta2,dp1,dp2";

struct SweepSpec {
  Parameter parameter = Parameter::Delta0;
  double from = 1.0;
  double to = 10.0;
  std::size_t steps = 50;
  ModelParams base;
};

// Throws InvalidParams unless from < to, steps >= 2 and the base is valid.
void validate_sweep(const SweepSpec& spec);

// steps equally spaced values from `from` to `to`, both included.
std::vector<double> sweep_grid(const SweepSpec& spec);

struct SweepRow {
  double value = 0.0;
  // Empty when the point has no equilibrium or the solve failed; `status`
  // then holds the flag written to the CSV.
  std::optional<Equilibrium> equilibrium;
  std::string status;
  double f1_idx = 0.0;
  double f2_idx = 0.0;
  SensitivityReport sensitivity;
};

// Rows are computed in parallel and returned in grid order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

std::size_t failed_rows(const std::vector<SweepRow>& rows) noexcept;

// RFC-4180 CSV with kSweepHeader and 12 significant digits.
std::string render_csv(const std::vector<SweepRow>& rows);

struct FigureSpec {
  std::string name;  // file stem, e.g. "fig_p_delta0"
  Parameter parameter;
};

// The 12 figure sweeps: p and theta against each of the five parameters,
// and the reinsurer indices against both lambdas.
const std::vector<FigureSpec>& figure_specs();

// Default sweep range for a parameter: [1, 10] for risk aversions,
// [0.02, 0.98] for lambdas, clipped so the grid keeps lambda1*lambda2 < 1.
SweepSpec default_sweep(Parameter q, const ModelParams& base = {}, std::size_t steps = 50);

// Writes <dir>/<name>.csv for every figure; returns the paths written.
std::vector<std::filesystem::path> write_figures(const std::filesystem::path& dir,
                                                 const ModelParams& base = {});

}  // namespace stacknash
