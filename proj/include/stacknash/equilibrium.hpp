#pragma once

#include <cstddef>
#include <vector>

#include "stacknash/model.hpp"

namespace stacknash {

struct SolverConfig {
  // Upper bound accepted for |theta1 - phi1(theta2)| + |theta2 - phi2(theta1)|.
  // The root finder itself runs until the bracket collapses to a few ulps.
  double tolerance = 1e-12;
  int max_iterations = 200;
  double bracket_floor = 1e-12;
};

enum class ExistenceVerdict { Exists, NotExists };

// An equilibrium exists iff lambda1 * lambda2 < 1 (zero included).
ExistenceVerdict existence(double lambda1, double lambda2);

// g(theta1) = phi1(phi2(theta1)) - theta1; its unique root is theta1*.
double composed_gap(const ModelParams& params, double theta1);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// [bracket_floor, delta1 + delta0/2 + 1]. phi1 never exceeds delta1 + delta0/2,
// so g is negative at the upper end.
Bracket solver_bracket(const ModelParams& params, const SolverConfig& config = {});

double fixed_point_residual(const ModelParams& params, const PremiumPair& theta);

// Closed-form equilibrium loadings when neither reinsurer weighs its rival.
PremiumPair zero_competition_equilibrium(double delta0, double delta1, double delta2);

Equilibrium solve(const ModelParams& params, const SolverConfig& config = {});

// Number of sign changes of g over `points` equally spaced nodes of the
// solver bracket (endpoints included).
int count_gap_sign_changes(const ModelParams& params, std::size_t points,
                           const SolverConfig& config = {});

struct LimitRow {
  double epsilon = 0.0;
  double lambda2 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double total_cession = 0.0;
};

// Approach to the existence boundary: for each epsilon, lambda2 = (1 - eps)/lambda1.
std::vector<LimitRow> limit_profile(const ModelParams& params, const std::vector<double>& epsilons,
                                    const SolverConfig& config = {});

}  // namespace stacknash
