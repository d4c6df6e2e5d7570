#include "stacknash/best_response.hpp"

#include <cmath>
#include <string>

#include "stacknash/errors.hpp"

namespace stacknash {

namespace {

void require_positive_premiums(const PremiumPair& theta) {
  if (!(theta.theta1 > 0.0) || !(theta.theta2 > 0.0) || !std::isfinite(theta.theta1) ||
      !std::isfinite(theta.theta2)) {
    throw NonpositivePremium("premium loadings must be positive and finite, got (" +
                             std::to_string(theta.theta1) + ", " + std::to_string(theta.theta2) + ")");
  }
}

void require_domain(const ReinsurerSide& side, double x) {
  if (!(x >= 0.0) || (side.rival_weight > 0.0 && x == 0.0)) {
    throw NonpositiveInput("phi requires x > 0 (x >= 0 when the rival weight is zero), got " +
                           std::to_string(x));
  }
}

// Denominator of the generic rational form.
double phi_denominator(const ReinsurerSide& s, double x) {
  const double w = s.rival_weight;
  return 2.0 * x * x + ((1.0 + 2.0 * w) * s.delta0 + 2.0 * w * s.own_delta) * x +
         w * (1.0 + w) * s.delta0 * s.own_delta;
}

}  // namespace

ReinsurerSide reinsurer_side(const ModelParams& params, Reinsurer i) {
  return {params.delta(i), params.rival_weight(i), params.delta0};
}

CessionPair insurer_response(double delta0, const PremiumPair& theta) {
  require_positive_premiums(theta);
  const double t1 = theta.theta1;
  const double t2 = theta.theta2;
  const double denom = delta0 * t1 + delta0 * t2 + 2.0 * t1 * t2;
  return {delta0 * t2 / denom, delta0 * t1 / denom};
}

double phi(const ReinsurerSide& side, double x) {
  require_domain(side, x);
  const double d0 = side.delta0;
  const double di = side.own_delta;
  const double w = side.rival_weight;
  if (w == 0.0) return ((d0 + 2.0 * di) * x + d0 * di) / (2.0 * x + d0);
  const double num = (d0 + 2.0 * di) * x * x + (1.0 + w) * d0 * di * x;
  return num / phi_denominator(side, x);
}

double phi_prime(const ReinsurerSide& side, double x) {
  require_domain(side, x);
  const double d0 = side.delta0;
  const double di = side.own_delta;
  const double w = side.rival_weight;
  if (w == 0.0) {
    const double q = 2.0 * x + d0;
    return d0 * d0 / (q * q);
  }
  const double den = phi_denominator(side, x);
  const double a2 = 4.0 * d0 * di * w + 4.0 * di * di * w + 2.0 * w * d0 * d0 + d0 * d0;
  const double a1 = 2.0 * d0 * di * (d0 + 2.0 * di) * w * (1.0 + w);
  const double a0 = d0 * d0 * di * di * w * (1.0 + w) * (1.0 + w);
  return ((a2 * x + a1) * x + a0) / (den * den);
}

PartialSet phi_partials(const ReinsurerSide& side, double x) {
  if (!(x > 0.0)) throw NonpositiveInput("phi_partials requires x > 0, got " + std::to_string(x));
  const double d0 = side.delta0;
  const double di = side.own_delta;
  const double w = side.rival_weight;
  const double den = phi_denominator(side, x);
  const double den2 = den * den;
  const double x2 = x * x;

  PartialSet out;
  out.d_delta0 = 2.0 * x2 * x2 / den2;
  const double g = d0 * (1.0 + w) + 2.0 * x;
  out.d_own_delta = x2 * g * g / den2;
  out.d_rival_delta = 0.0;
  out.d_own_lambda = 0.0;
  const double b3 = 2.0 * (d0 * d0 + 2.0 * d0 * di + 2.0 * di * di);
  const double b2 = 2.0 * d0 * di * (d0 + 2.0 * di) * (1.0 + w);
  const double b1 = d0 * d0 * di * di * (1.0 + w) * (1.0 + w);
  out.d_rival_weight = -(((b3 * x + b2) * x + b1) * x) / den2;
  return out;
}

CessionPartialSet cession_partials(double delta0, const PremiumPair& theta) {
  require_positive_premiums(theta);
  const double t1 = theta.theta1;
  const double t2 = theta.theta2;
  const double d0 = delta0;
  const double den = 2.0 * t1 * t2 + d0 * (t1 + t2);
  const double den2 = den * den;

  CessionPartialSet out;
  out.dp_ddelta0[0] = 2.0 * t1 * t2 * t2 / den2;
  out.dp_ddelta0[1] = 2.0 * t2 * t1 * t1 / den2;
  // p1: own loading theta1, rival theta2; p2 mirrored.
  out.dp_dtheta1[0] = -d0 * t2 * (d0 + 2.0 * t2) / den2;
  out.dp_dtheta2[0] = d0 * d0 * t1 / den2;
  out.dp_dtheta2[1] = -d0 * t1 * (d0 + 2.0 * t1) / den2;
  out.dp_dtheta1[1] = d0 * d0 * t2 / den2;
  return out;
}

}  // namespace stacknash
