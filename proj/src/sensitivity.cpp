#include "stacknash/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stacknash/best_response.hpp"
#include "stacknash/errors.hpp"
#include "stacknash/root_finding.hpp"

namespace stacknash {

std::string_view parameter_name(Parameter q) noexcept {
  switch (q) {
    case Parameter::Delta0: return "delta0";
    case Parameter::Delta1: return "delta1";
    case Parameter::Delta2: return "delta2";
    case Parameter::Lambda1: return "lambda1";
    case Parameter::Lambda2: return "lambda2";
  }
  return "";
}

std::optional<Parameter> parse_parameter(std::string_view name) noexcept {
  for (Parameter q : kAllParameters) {
    if (parameter_name(q) == name) return q;
  }
  return std::nullopt;
}

double& parameter_ref(ModelParams& params, Parameter q) noexcept {
  switch (q) {
    case Parameter::Delta0: return params.delta0;
    case Parameter::Delta1: return params.delta1;
    case Parameter::Delta2: return params.delta2;
    case Parameter::Lambda1: return params.lambda1;
    case Parameter::Lambda2: return params.lambda2;
  }
  return params.delta0;
}

double parameter_value(const ModelParams& params, Parameter q) noexcept {
  ModelParams copy = params;
  return parameter_ref(copy, q);
}

namespace {

// Partial of phi_i in parameter q at its evaluation point. phi1 depends on
// (delta0, delta1, lambda2) and phi2 on (delta0, delta2, lambda1).
double direct_partial(const PartialSet& d, Reinsurer i, Parameter q) {
  const bool first = (i == Reinsurer::One);
  switch (q) {
    case Parameter::Delta0: return d.d_delta0;
    case Parameter::Delta1: return first ? d.d_own_delta : d.d_rival_delta;
    case Parameter::Delta2: return first ? d.d_rival_delta : d.d_own_delta;
    case Parameter::Lambda1: return first ? d.d_own_lambda : d.d_rival_weight;
    case Parameter::Lambda2: return first ? d.d_rival_weight : d.d_own_lambda;
  }
  return 0.0;
}

}  // namespace

ThetaSensitivity theta_sensitivity(const ModelParams& params, const Equilibrium& eq, Parameter q) {
  if (existence(params.lambda1, params.lambda2) == ExistenceVerdict::NotExists) {
    throw NoEquilibrium("no equilibrium: lambda1*lambda2 >= 1");
  }
  const auto side1 = reinsurer_side(params, Reinsurer::One);
  const auto side2 = reinsurer_side(params, Reinsurer::Two);
  const double t1 = eq.theta_star.theta1;
  const double t2 = eq.theta_star.theta2;

  const double slope1 = phi_prime(side1, t2);
  const double slope2 = phi_prime(side2, t1);
  const double denom = 1.0 - slope1 * slope2;
  if (!(denom > kMinImplicitDenominator)) {
    throw DegenerateDenominator("implicit-function denominator " + std::to_string(denom) +
                                " too close to zero");
  }
  const double a1 = direct_partial(phi_partials(side1, t2), Reinsurer::One, q);
  const double a2 = direct_partial(phi_partials(side2, t1), Reinsurer::Two, q);
  return {(a1 + slope1 * a2) / denom, (a2 + slope2 * a1) / denom};
}

CessionSensitivity cession_sensitivity(const ModelParams& params, const Equilibrium& eq,
                                       Parameter q) {
  const ThetaSensitivity dt = theta_sensitivity(params, eq, q);
  const CessionPartialSet cp = cession_partials(params.delta0, eq.theta_star);
  const double direct1 = q == Parameter::Delta0 ? cp.dp_ddelta0[0] : 0.0;
  const double direct2 = q == Parameter::Delta0 ? cp.dp_ddelta0[1] : 0.0;
  return {direct1 + cp.dp_dtheta1[0] * dt.d_theta1 + cp.dp_dtheta2[0] * dt.d_theta2,
          direct2 + cp.dp_dtheta1[1] * dt.d_theta1 + cp.dp_dtheta2[1] * dt.d_theta2};
}

SensitivityReport analytic_sensitivity(const ModelParams& params, const Equilibrium& eq,
                                       Parameter q) {
  const ThetaSensitivity dt = theta_sensitivity(params, eq, q);
  const CessionSensitivity dp = cession_sensitivity(params, eq, q);
  return {q, dt.d_theta1, dt.d_theta2, dp.d_p1, dp.d_p2, Method::Analytic};
}

namespace {

using Ext = long double;

struct Sample {
  Ext t1, t2, p1, p2;
};

// Best response in extended precision. Difference quotients of re-solved
// equilibria lose about log10(1/h) digits, which double cannot spare when a
// derivative is many orders smaller than the loading itself.
Ext phi_ext(const ReinsurerSide& s, Ext x) {
  const Ext d0 = s.delta0, di = s.own_delta, w = s.rival_weight;
  if (w == 0) return ((d0 + 2 * di) * x + d0 * di) / (2 * x + d0);
  const Ext num = (d0 + 2 * di) * x * x + (1 + w) * d0 * di * x;
  const Ext den = 2 * x * x + ((1 + 2 * w) * d0 + 2 * w * di) * x + w * (1 + w) * d0 * di;
  return num / den;
}

Sample sample_at(const ModelParams& base, Parameter q, double value, const SolverConfig& solver) {
  ModelParams p = base;
  parameter_ref(p, q) = value;
  // The double solve validates the point and supplies the bracket check.
  const Equilibrium eq = solve(p, solver);
  const auto side1 = reinsurer_side(p, Reinsurer::One);
  const auto side2 = reinsurer_side(p, Reinsurer::Two);
  const auto gap = [&](Ext t) { return phi_ext(side1, phi_ext(side2, t)) - t; };

  Ext t1 = eq.theta_star.theta1;
  if (p.lambda1 != 0.0 || p.lambda2 != 0.0) {
    // Tight bracket around the double root, widened until g changes sign.
    Ext lo = t1, hi = t1, step = std::max<Ext>(t1 * 1e-12L, 1e-300L);
    for (int k = 0; k < 200 && !(gap(lo) > 0); ++k, step *= 2) lo = std::max<Ext>(t1 - step, t1 / 2);
    step = std::max<Ext>(t1 * 1e-12L, 1e-300L);
    for (int k = 0; k < 200 && !(gap(hi) < 0); ++k, step *= 2) hi = t1 + step;
    roots::BracketOptions opts;
    opts.max_iterations = solver.max_iterations;
    const auto root = roots::find_root(gap, lo, hi, opts);
    if (root.converged) t1 = root.x;
  } else {
    const Ext d0 = p.delta0, d1 = p.delta1, d2 = p.delta2;
    t1 = d1 / 2 + std::sqrt((d0 + d1) / (d0 + d2) * (d0 * d1 + d0 * d2 + d1 * d2)) / 2;
  }
  const Ext t2 = phi_ext(side2, t1);
  const Ext d0 = p.delta0;
  const Ext den = d0 * t1 + d0 * t2 + 2 * t1 * t2;
  return {t1, t2, d0 * t2 / den, d0 * t1 / den};
}

bool admissible_value(const ModelParams& base, Parameter q, double value) {
  ModelParams p = base;
  parameter_ref(p, q) = value;
  if (q == Parameter::Lambda1 || q == Parameter::Lambda2) {
    return value >= 0.0 && existence(p.lambda1, p.lambda2) == ExistenceVerdict::Exists;
  }
  return value > 0.0;
}

}  // namespace

SensitivityReport finite_difference_sensitivity(const ModelParams& params, Parameter q,
                                                const FiniteDifferenceConfig& config) {
  const double h = config.step;
  const double v = parameter_value(params, q);
  const auto at = [&](double value) { return sample_at(params, q, value, config.solver); };

  SensitivityReport r;
  r.parameter = q;
  r.method = Method::FiniteDifference;
  const auto assign = [&](auto combine) {
    r.d_theta1 = combine(&Sample::t1);
    r.d_theta2 = combine(&Sample::t2);
    r.d_p1 = combine(&Sample::p1);
    r.d_p2 = combine(&Sample::p2);
  };

  if (admissible_value(params, q, v - h) && admissible_value(params, q, v + h)) {
    const Sample lo = at(v - h);
    const Sample hi = at(v + h);
    assign([&](Ext Sample::*m) { return static_cast<double>((hi.*m - lo.*m) / (2 * Ext(h))); });
  } else if (admissible_value(params, q, v + 2.0 * h)) {
    const Sample s0 = at(v);
    const Sample s1 = at(v + h);
    const Sample s2 = at(v + 2.0 * h);
    assign([&](Ext Sample::*m) {
      return static_cast<double>((-3 * s0.*m + 4 * s1.*m - s2.*m) / (2 * Ext(h)));
    });
  } else {
    const Sample s0 = at(v);
    const Sample s1 = at(v - h);
    const Sample s2 = at(v - 2.0 * h);
    assign([&](Ext Sample::*m) {
      return static_cast<double>((3 * s0.*m - 4 * s1.*m + s2.*m) / (2 * Ext(h)));
    });
  }
  return r;
}

}  // namespace stacknash
