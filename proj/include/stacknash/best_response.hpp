#pragma once

#include "stacknash/model.hpp"

namespace stacknash {

// Inputs to reinsurer i's premium best response phi_i. rival_weight is the
// weight on the rival's surplus in Y_i, i.e. lambda_j for reinsurer i.
struct ReinsurerSide {
  double own_delta = 0.0;
  double rival_weight = 0.0;
  double delta0 = 0.0;
};

ReinsurerSide reinsurer_side(const ModelParams& params, Reinsurer i);

// Insurer's optimal ceded proportions given both loadings:
//   p1 = d0*theta2 / D,  p2 = d0*theta1 / D,  D = d0*theta1 + d0*theta2 + 2*theta1*theta2.
CessionPair insurer_response(double delta0, const PremiumPair& theta);

// Reinsurer i's optimal loading as a function of the rival's loading x.
//
// For w > 0 this is the rational function
//   ((d0 + 2 di) x^2 + (1 + w) d0 di x) / (2 x^2 + ((1 + 2w) d0 + 2 w di) x + w (1 + w) d0 di),
// which vanishes at x = 0. For w = 0 numerator and denominator share the
// factor x and the reduced form ((d0 + 2 di) x + d0 di) / (2x + d0) is used,
// with phi(0) = di.
double phi(const ReinsurerSide& side, double x);

// d phi / dx; tends to 1/w as x -> 0 and to 0 as x -> infinity.
double phi_prime(const ReinsurerSide& side, double x);

struct PartialSet {
  double d_delta0 = 0.0;
  double d_own_delta = 0.0;
  double d_rival_delta = 0.0;   // identically zero
  double d_own_lambda = 0.0;    // identically zero
  double d_rival_weight = 0.0;  // derivative in lambda_j
};

PartialSet phi_partials(const ReinsurerSide& side, double x);

struct CessionPartialSet {
  // Index order is (p1, p2).
  double dp_ddelta0[2] = {0.0, 0.0};
  double dp_dtheta1[2] = {0.0, 0.0};
  double dp_dtheta2[2] = {0.0, 0.0};

  double own_theta(Reinsurer i) const noexcept {
    return i == Reinsurer::One ? dp_dtheta1[0] : dp_dtheta2[1];
  }
  double rival_theta(Reinsurer i) const noexcept {
    return i == Reinsurer::One ? dp_dtheta2[0] : dp_dtheta1[1];
  }
};

CessionPartialSet cession_partials(double delta0, const PremiumPair& theta);

}  // namespace stacknash
