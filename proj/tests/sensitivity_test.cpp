#include "stacknash/sensitivity.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "stacknash/errors.hpp"
#include "test_support.hpp"

namespace stacknash {
namespace {

using testing::ParamSampler;
using testing::rel_err;

bool is_lambda(Parameter q) { return q == Parameter::Lambda1 || q == Parameter::Lambda2; }

TEST(Parameters, NamesRoundTrip) {
  for (Parameter q : kAllParameters) {
    EXPECT_EQ(parse_parameter(parameter_name(q)), q);
  }
  EXPECT_FALSE(parse_parameter("mu").has_value());
  ModelParams p;
  parameter_ref(p, Parameter::Lambda2) = 0.25;
  EXPECT_EQ(p.lambda2, 0.25);
  EXPECT_EQ(parameter_value(p, Parameter::Delta1), 4.0);
}

TEST(ThetaSensitivity, SignsAtDefaults) {
  const ModelParams p;
  const Equilibrium eq = solve(p);
  const ThetaSensitivity d0 = theta_sensitivity(p, eq, Parameter::Delta0);
  EXPECT_GT(d0.d_theta1, 0.0);
  EXPECT_GT(d0.d_theta2, 0.0);
  const ThetaSensitivity l1 = theta_sensitivity(p, eq, Parameter::Lambda1);
  EXPECT_LT(l1.d_theta1, 0.0);
  EXPECT_LT(l1.d_theta2, 0.0);
}

TEST(CessionSensitivity, SignsAtDefaults) {
  const ModelParams p;
  const Equilibrium eq = solve(p);
  const CessionSensitivity d0 = cession_sensitivity(p, eq, Parameter::Delta0);
  EXPECT_GT(d0.d_p1, 0.0);
  EXPECT_GT(d0.d_p2, 0.0);
  const CessionSensitivity l2 = cession_sensitivity(p, eq, Parameter::Lambda2);
  EXPECT_GT(l2.d_p1, 0.0);
  EXPECT_GT(l2.d_p2, 0.0);
}

TEST(CessionSensitivity, NoGlobalSign) {
  // d p1 / d delta1 is negative at the defaults although d p1 / d delta0 is positive.
  const ModelParams p;
  const Equilibrium eq = solve(p);
  EXPECT_LT(cession_sensitivity(p, eq, Parameter::Delta1).d_p1, 0.0);
}

TEST(FiniteDifference, OneSidedAtZeroLambda) {
  ModelParams p;
  p.lambda1 = 0.0;
  const Equilibrium eq = solve(p);
  const SensitivityReport fd = finite_difference_sensitivity(p, Parameter::Lambda1);
  const SensitivityReport an = analytic_sensitivity(p, eq, Parameter::Lambda1);
  EXPECT_EQ(fd.method, Method::FiniteDifference);
  EXPECT_LT(rel_err(an.d_theta1, fd.d_theta1), 1e-5);
  EXPECT_LT(rel_err(an.d_theta2, fd.d_theta2), 1e-5);
}

TEST(ThetaSensitivity, DegenerateNearBoundary) {
  ModelParams p;
  p.lambda1 = 0.5;
  p.lambda2 = 2.0 * (1.0 - 1e-13);
  const Equilibrium eq = solve(p);
  EXPECT_THROW(theta_sensitivity(p, eq, Parameter::Delta0), DegenerateDenominator);
}

TEST(SensitivityProperties, SignsAndFiniteDifferenceAgreement) {
  ParamSampler s(31);
  for (int k = 0; k < 500; ++k) {
    const ModelParams p = s.draw(0.99);
    const Equilibrium eq = solve(p);
    for (Parameter q : kAllParameters) {
      const SensitivityReport an = analytic_sensitivity(p, eq, q);
      if (is_lambda(q)) {
        EXPECT_LT(an.d_theta1, 0.0) << k;
        EXPECT_LT(an.d_theta2, 0.0) << k;
      } else {
        EXPECT_GT(an.d_theta1, 0.0) << k;
        EXPECT_GT(an.d_theta2, 0.0) << k;
      }
      const SensitivityReport fd = finite_difference_sensitivity(p, q);
      EXPECT_LT(rel_err(an.d_theta1, fd.d_theta1), 1e-5) << k << ' ' << parameter_name(q);
      EXPECT_LT(rel_err(an.d_theta2, fd.d_theta2), 1e-5) << k << ' ' << parameter_name(q);
      EXPECT_LT(rel_err(an.d_p1, fd.d_p1), 1e-5) << k << ' ' << parameter_name(q);
      EXPECT_LT(rel_err(an.d_p2, fd.d_p2), 1e-5) << k << ' ' << parameter_name(q);
    }
  }
}

}  // namespace
}  // namespace stacknash
