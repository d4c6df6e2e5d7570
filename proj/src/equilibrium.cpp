#include "stacknash/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stacknash/best_response.hpp"
#include "stacknash/errors.hpp"
#include "stacknash/root_finding.hpp"
#include "stacknash/simd/kernels.hpp"
#include "stacknash/valuation.hpp"

namespace stacknash {

ExistenceVerdict existence(double lambda1, double lambda2) {
  return lambda1 * lambda2 < 1.0 ? ExistenceVerdict::Exists : ExistenceVerdict::NotExists;
}

double composed_gap(const ModelParams& params, double theta1) {
  const auto first = reinsurer_side(params, Reinsurer::One);
  const auto second = reinsurer_side(params, Reinsurer::Two);
  return phi(first, phi(second, theta1)) - theta1;
}

Bracket solver_bracket(const ModelParams& params, const SolverConfig& config) {
  return {config.bracket_floor, params.delta1 + 0.5 * params.delta0 + 1.0};
}

double fixed_point_residual(const ModelParams& params, const PremiumPair& theta) {
  const auto first = reinsurer_side(params, Reinsurer::One);
  const auto second = reinsurer_side(params, Reinsurer::Two);
  return std::abs(theta.theta1 - phi(first, theta.theta2)) +
         std::abs(theta.theta2 - phi(second, theta.theta1));
}

PremiumPair zero_competition_equilibrium(double delta0, double delta1, double delta2) {
  const double cross = delta0 * delta1 + delta0 * delta2 + delta1 * delta2;
  const double ratio = (delta0 + delta1) / (delta0 + delta2);
  return {0.5 * delta1 + 0.5 * std::sqrt(ratio * cross),
          0.5 * delta2 + 0.5 * std::sqrt(cross / ratio)};
}

Equilibrium solve(const ModelParams& params, const SolverConfig& config) {
  require_valid(params);
  if (existence(params.lambda1, params.lambda2) == ExistenceVerdict::NotExists) {
    throw NoEquilibrium("no equilibrium: lambda1*lambda2 >= 1");
  }

  Equilibrium eq;
  if (params.lambda1 == 0.0 && params.lambda2 == 0.0) {
    eq.theta_star = zero_competition_equilibrium(params.delta0, params.delta1, params.delta2);
    eq.iterations = 0;
  } else {
    Bracket br = solver_bracket(params, config);
    // Very close to lambda1*lambda2 = 1 the root sits below the floor; g > 0
    // near zero, so walk the lower end down until the sign is right.
    for (int k = 0; k < 64 && br.lo > 1e-300 && !(composed_gap(params, br.lo) > 0.0); ++k) {
      br.lo *= 1.0 / 64.0;
    }
    roots::BracketOptions opts;
    opts.max_iterations = config.max_iterations;
    const auto root =
        roots::find_root([&](double t) { return composed_gap(params, t); }, br.lo, br.hi, opts);
    if (!root.bracketed) {
      throw SolverFailure("fixed-point map has no sign change on [" + std::to_string(br.lo) + ", " +
                          std::to_string(br.hi) + "]");
    }
    if (!root.converged) {
      throw SolverFailure("root finder did not converge in " +
                          std::to_string(config.max_iterations) + " iterations");
    }
    const double theta1 = root.x;
    eq.theta_star = {theta1, phi(reinsurer_side(params, Reinsurer::Two), theta1)};
    eq.iterations = root.iterations;
  }

  eq.residual = fixed_point_residual(params, eq.theta_star);
  if (!(eq.residual <= config.tolerance)) {
    throw SolverFailure("fixed-point residual " + std::to_string(eq.residual) +
                        " exceeds tolerance");
  }
  eq.p_star = insurer_response(params.delta0, eq.theta_star);
  eq.f0_rate = f0_rate(params, eq.theta_star);
  eq.f1_rate = reinsurer_rate(params, eq.theta_star, Reinsurer::One);
  eq.f2_rate = reinsurer_rate(params, eq.theta_star, Reinsurer::Two);
  return eq;
}

int count_gap_sign_changes(const ModelParams& params, std::size_t points,
                           const SolverConfig& config) {
  if (points < 2) return 0;
  const Bracket br = solver_bracket(params, config);
  const auto first = reinsurer_side(params, Reinsurer::One);
  const auto second = reinsurer_side(params, Reinsurer::Two);
  const double step = (br.hi - br.lo) / static_cast<double>(points - 1);

  constexpr std::size_t kChunk = 1024;
  double xs[kChunk];
  double gs[kChunk];
  int changes = 0;
  int last_sign = 0;
  for (std::size_t start = 0; start < points; start += kChunk) {
    const std::size_t n = std::min(kChunk, points - start);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = start + k;
      xs[k] = idx + 1 == points ? br.hi : br.lo + step * static_cast<double>(idx);
    }
    simd::composed_gap(first, second, {xs, n}, {gs, n});
    for (std::size_t k = 0; k < n; ++k) {
      const int s = (gs[k] > 0.0) - (gs[k] < 0.0);
      if (s == 0) continue;
      if (last_sign != 0 && s != last_sign) ++changes;
      last_sign = s;
    }
  }
  return changes;
}

std::vector<LimitRow> limit_profile(const ModelParams& params, const std::vector<double>& epsilons,
                                    const SolverConfig& config) {
  if (!(params.lambda1 > 0.0)) throw InvalidParams("limit_profile requires lambda1 > 0");
  std::vector<LimitRow> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps <= 1.0)) {
      throw InvalidParams("limit_profile epsilon must lie in (0, 1], got " + std::to_string(eps));
    }
    ModelParams p = params;
    p.lambda2 = (1.0 - eps) / params.lambda1;
    const Equilibrium eq = solve(p, config);
    rows.push_back({eps, p.lambda2, eq.theta_star.theta1, eq.theta_star.theta2, eq.p_star.total()});
  }
  return rows;
}

}  // namespace stacknash
