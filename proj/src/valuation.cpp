#include "stacknash/valuation.hpp"

#include <cmath>

#include "stacknash/best_response.hpp"
#include "stacknash/errors.hpp"

namespace stacknash {

double f0_rate(const ModelParams& params, const PremiumPair& theta) {
  if (!is_admissible(theta)) throw NonpositivePremium("f0_rate requires positive loadings");
  const double d0 = params.delta0;
  const double t1 = theta.theta1;
  const double t2 = theta.theta2;
  const double den = d0 * t1 + d0 * t2 + 2.0 * t1 * t2;
  return d0 * (params.mu - params.c + d0 * params.sigma * params.sigma * t1 * t2 / den);
}

double reinsurer_rate(const ModelParams& params, const PremiumPair& theta, Reinsurer i) {
  if (!is_admissible(theta)) throw NonpositivePremium("reinsurer_rate requires positive loadings");
  const double d0 = params.delta0;
  const double di = params.delta(i);
  const double lj = params.rival_weight(i);
  const double ti = theta[i];
  const double tj = theta[rival(i)];
  const double den = d0 * ti + d0 * tj + 2.0 * ti * tj;
  const double spread = tj - lj * ti;
  const double s2 = params.sigma * params.sigma;
  return s2 * d0 * d0 * di * spread / (den * den) * (-ti * tj + 0.5 * di * spread);
}

double fi_rate(const ModelParams& params, const Equilibrium& eq, Reinsurer i) {
  return reinsurer_rate(params, eq.theta_star, i);
}

ValueCoefficient insurer_coefficient(const ModelParams& params, const Equilibrium& eq) {
  return {f0_rate(params, eq.theta_star), Player::Insurer};
}

ValueCoefficient reinsurer_coefficient(const ModelParams& params, const Equilibrium& eq,
                                       Reinsurer i) {
  return {fi_rate(params, eq, i), i == Reinsurer::One ? Player::Reinsurer1 : Player::Reinsurer2};
}

double value_insurer(const ModelParams& params, const Equilibrium& eq, double t, double x) {
  const double f = insurer_coefficient(params, eq).at(t, params.horizon);
  return -std::exp(-params.delta0 * x + f) / params.delta0;
}

double value_reinsurer(const ModelParams& params, const Equilibrium& eq, Reinsurer i, double t,
                       double y) {
  const double di = params.delta(i);
  const double f = reinsurer_coefficient(params, eq, i).at(t, params.horizon);
  return -std::exp(-di * y + f) / di;
}

double welfare_index(const ModelParams& params, const Equilibrium& eq, Reinsurer i) {
  const double s2 = params.sigma * params.sigma;
  return fi_rate(params, eq, i) / (s2 * params.delta0 * params.delta(i));
}

}  // namespace stacknash
