#include "stacknash/valuation.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "stacknash/best_response.hpp"
#include "stacknash/equilibrium.hpp"
#include "stacknash/errors.hpp"
#include "stacknash/mcsim.hpp"
#include "test_support.hpp"

namespace stacknash {
namespace {

using testing::ParamSampler;
using testing::rel_err;

TEST(F0Rate, ReferenceValue) {
  const ModelParams p;
  EXPECT_NEAR(f0_rate(p, {1.0, 1.0}), -35.0 / 12.0, 1e-14);
  EXPECT_THROW(f0_rate(p, {0.0, 1.0}), NonpositivePremium);
}

TEST(F0Rate, VanishesWithoutLoadingOrDrift) {
  ModelParams p;
  p.mu = p.c;
  EXPECT_LT(std::abs(f0_rate(p, {1e-9, 1e-9})), 1e-8);
}

TEST(F0Rate, MatchesGaussianExponent) {
  // -d0 m + d0^2 s^2 / 2 with m, s the drift and diffusion of X0 under pbar.
  const ModelParams p;
  const PremiumPair theta{1.0, 1.0};
  const CessionPair q = insurer_response(p.delta0, theta);
  const double m = p.c - p.mu - (theta.theta1 * q.p1 * q.p1 + theta.theta2 * q.p2 * q.p2);
  const double s = 1.0 - q.p1 - q.p2;
  const double exponent = -p.delta0 * m + 0.5 * p.delta0 * p.delta0 * s * s;
  EXPECT_NEAR(f0_rate(p, theta), exponent, 1e-14);
  EXPECT_NEAR(exponent, p.delta0 * (5.0 / 12.0) + 5.0 * (p.mu - p.c), 1e-14);
}

TEST(F0Properties, AlgebraicIdentityOnRandomDraws) {
  ParamSampler s(21);
  for (int k = 0; k < 1000; ++k) {
    const double d0 = s.uniform(0.1, 10.0), sigma = s.uniform(0.1, 3.0);
    const PremiumPair t{s.uniform(1e-3, 20.0), s.uniform(1e-3, 20.0)};
    const CessionPair q = insurer_response(d0, t);
    const double s2 = sigma * sigma;
    const double lhs = s2 * (t.theta1 * q.p1 * q.p1 + t.theta2 * q.p2 * q.p2) +
                       0.5 * d0 * s2 * std::pow(1.0 - q.p1 - q.p2, 2);
    const double den = d0 * t.theta1 + d0 * t.theta2 + 2.0 * t.theta1 * t.theta2;
    EXPECT_LT(rel_err(lhs, d0 * s2 * t.theta1 * t.theta2 / den), 1e-12) << k;
  }
}

TEST(F0Properties, DecreasingInBothLambdas) {
  for (Reinsurer i : {Reinsurer::One, Reinsurer::Two}) {
    double previous = INFINITY;
    for (int k = 0; k < 20; ++k) {
      ModelParams p;
      (i == Reinsurer::One ? p.lambda1 : p.lambda2) = 0.02 + 0.96 * k / 19.0;
      const double rate = solve(p).f0_rate;
      EXPECT_LT(rate, previous);
      previous = rate;
    }
  }
}

TEST(ReinsurerRate, MatchesGaussianOracleAtEquilibrium) {
  const ModelParams p;
  const Equilibrium eq = solve(p);
  for (Reinsurer i : {Reinsurer::One, Reinsurer::Two}) {
    const double oracle = mc::gaussian_utility_reinsurer(p, eq.theta_star, i, 0.0, 0.0);
    EXPECT_LT(rel_err(value_reinsurer(p, eq, i, 0.0, 0.0), oracle), 1e-8);
  }
  EXPECT_NEAR(eq.f1_rate, -0.45718167787146147, 1e-12);
}

TEST(ReinsurerRate, MatchesGaussianOracleOnRandomDraws) {
  ParamSampler s(22);
  for (int k = 0; k < 200; ++k) {
    ModelParams p = s.draw();
    p.sigma = s.uniform(0.2, 2.0);
    p.horizon = s.uniform(0.2, 3.0);
    const Equilibrium eq = solve(p);
    for (Reinsurer i : {Reinsurer::One, Reinsurer::Two}) {
      const double oracle = mc::gaussian_utility_reinsurer(p, eq.theta_star, i, 0.0, 0.3);
      EXPECT_LT(rel_err(value_reinsurer(p, eq, i, 0.0, 0.3), oracle), 1e-10) << k;
    }
  }
}

TEST(ReinsurerRate, VanishesWhenSpreadIsZero) {
  ModelParams p;
  p.lambda2 = 0.5;  // weight for reinsurer 1
  EXPECT_EQ(reinsurer_rate(p, {2.0, 1.0}, Reinsurer::One), 0.0);
}

// The printed reduced expression carries a single d0 inside the bracket.
// Its sign agrees with the implemented rate at solved equilibria.
TEST(ReinsurerRate, SignAgreesWithPrintedReducedForm) {
  ParamSampler s(23);
  for (int k = 0; k < 500; ++k) {
    const ModelParams p = s.draw();
    const Equilibrium eq = solve(p);
    for (Reinsurer i : {Reinsurer::One, Reinsurer::Two}) {
      const double ti = eq.theta_star[i], tj = eq.theta_star[rival(i)];
      const double lj = p.rival_weight(i), di = p.delta(i), d0 = p.delta0;
      const double den = d0 * ti + d0 * tj + 2.0 * ti * tj;
      const double printed = (tj - lj * ti) / (den * den) * (-d0 * ti * tj + 0.5 * di * (tj - lj * ti));
      const double rate = fi_rate(p, eq, i);
      if (std::abs(printed) < 1e-14) continue;
      EXPECT_EQ(std::signbit(rate), std::signbit(printed)) << k;
    }
  }
}

TEST(ValueFunctions, TerminalConditionAndMonotonicity) {
  const ModelParams p;
  const Equilibrium eq = solve(p);
  EXPECT_DOUBLE_EQ(value_insurer(p, eq, p.horizon, 0.0), -1.0 / p.delta0);
  EXPECT_DOUBLE_EQ(value_reinsurer(p, eq, Reinsurer::Two, p.horizon, 0.0), -1.0 / p.delta2);
  double previous = -INFINITY;
  for (double x = -2.0; x <= 2.0; x += 0.25) {
    const double v = value_insurer(p, eq, 0.3, x);
    EXPECT_LT(v, 0.0);
    EXPECT_GT(v, previous);
    previous = v;
  }
}

TEST(ValueFunctions, InsurerMatchesGaussianOracle) {
  ParamSampler s(24);
  for (int k = 0; k < 200; ++k) {
    ModelParams p = s.draw();
    p.sigma = s.uniform(0.2, 2.0);
    const Equilibrium eq = solve(p);
    const double t = s.uniform(0.0, p.horizon), x = s.uniform(-1.0, 1.0);
    const double oracle = mc::gaussian_utility_insurer(p, eq.theta_star, eq.p_star, t, x);
    EXPECT_LT(rel_err(value_insurer(p, eq, t, x), oracle), 1e-12) << k;
  }
}

TEST(WelfareIndex, Definition) {
  ModelParams p;
  const Equilibrium eq = solve(p);
  for (Reinsurer i : {Reinsurer::One, Reinsurer::Two}) {
    EXPECT_DOUBLE_EQ(welfare_index(p, eq, i), fi_rate(p, eq, i) / (p.delta0 * p.delta(i)));
  }
  ModelParams q = p;
  q.lambda1 = 0.4;
  const Equilibrium eq_q = solve(q);
  EXPECT_GT(welfare_index(q, eq_q, Reinsurer::One), welfare_index(p, eq, Reinsurer::One));
  EXPECT_GT(welfare_index(q, eq_q, Reinsurer::Two), welfare_index(p, eq, Reinsurer::Two));
}

TEST(WelfareIndex, VanishesWhenWeightEqualsLoadingRatio) {
  ModelParams p;
  Equilibrium eq = solve(p);
  p.lambda2 = eq.theta_star.theta2 / eq.theta_star.theta1;
  EXPECT_NEAR(welfare_index(p, eq, Reinsurer::One), 0.0, 1e-15);
}

}  // namespace
}  // namespace stacknash
