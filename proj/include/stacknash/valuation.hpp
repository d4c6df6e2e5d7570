#pragma once

#include "stacknash/model.hpp"

namespace stacknash {

// Every value-function exponent is affine in time-to-go for constant
// strategies, f(t) = rate * (T - t), so only the rate is stored.
struct ValueCoefficient {
  double rate = 0.0;
  Player player = Player::Insurer;

  double at(double t, double horizon) const noexcept { return rate * (horizon - t); }
};

// delta0 * (mu - c + delta0 sigma^2 theta1 theta2 / D).
double f0_rate(const ModelParams& params, const PremiumPair& theta);

// Reinsurer i's exponent rate when the insurer plays its best response to
// theta:
//   sigma^2 d0^2 di (tj - lj ti) / D^2 * (-ti tj + di (tj - lj ti) / 2),
// with lj = lambda_j the weight in Y_i = X_i - lambda_j X_j.
double reinsurer_rate(const ModelParams& params, const PremiumPair& theta, Reinsurer i);

double fi_rate(const ModelParams& params, const Equilibrium& eq, Reinsurer i);

ValueCoefficient insurer_coefficient(const ModelParams& params, const Equilibrium& eq);
ValueCoefficient reinsurer_coefficient(const ModelParams& params, const Equilibrium& eq,
                                       Reinsurer i);

// -(1/d0) exp(-d0 x + f0*(t)).
double value_insurer(const ModelParams& params, const Equilibrium& eq, double t, double x);

// -(1/di) exp(-di y + fi*(t)).
double value_reinsurer(const ModelParams& params, const Equilibrium& eq, Reinsurer i, double t,
                       double y);

// Dimensionless reinsurer index fi_rate / (sigma^2 d0 di); larger means lower welfare.
double welfare_index(const ModelParams& params, const Equilibrium& eq, Reinsurer i);

}  // namespace stacknash
