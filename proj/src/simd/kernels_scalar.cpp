#include <cmath>

#include "stacknash/simd/kernels.hpp"

namespace stacknash::simd {

namespace {

inline double phi_one(const ReinsurerSide& s, double x) {
  const double d0 = s.delta0;
  const double di = s.own_delta;
  const double w = s.rival_weight;
  if (w == 0.0) return ((d0 + 2.0 * di) * x + d0 * di) / (2.0 * x + d0);
  const double num = (d0 + 2.0 * di) * x * x + (1.0 + w) * d0 * di * x;
  const double den =
      2.0 * x * x + ((1.0 + 2.0 * w) * d0 + 2.0 * w * di) * x + w * (1.0 + w) * d0 * di;
  return num / den;
}

void phi_batch_scalar(const ReinsurerSide& side, const double* x, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = phi_one(side, x[k]);
}

void composed_gap_scalar(const ReinsurerSide& first, const ReinsurerSide& second, const double* x,
                         double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = phi_one(first, phi_one(second, x[k])) - x[k];
}

void insurer_exponent_scalar(const InsurerExponent& e, double p1, const double* p2, double* out,
                             std::size_t n) {
  const double head = e.base + e.own1 * p1 * p1;
  for (std::size_t k = 0; k < n; ++k) {
    const double q = p2[k];
    const double r = 1.0 - p1 - q;
    out[k] = head + e.own2 * q * q + e.retained * r * r;
  }
}

void reinsurer_exponent_scalar(const ReinsurerExponent& e, const double* theta, double* out,
                               std::size_t n) {
  const double tj = e.rival_theta;
  const double s2 = e.sigma * e.sigma;
  for (std::size_t k = 0; k < n; ++k) {
    const double ti = theta[k];
    const double den = e.delta0 * ti + e.delta0 * tj + 2.0 * ti * tj;
    const double pi = e.delta0 * tj / den;
    const double pj = e.delta0 * ti / den;
    const double drift = s2 * (ti * pi * pi - e.rival_weight * tj * pj * pj);
    const double diff = pi - e.rival_weight * pj;
    out[k] = -e.own_delta * (e.y + drift * e.tau) +
             0.5 * e.own_delta * e.own_delta * s2 * diff * diff * e.tau;
  }
}

void exp_affine_scalar(double scale, double a, double b, const double* z, double* out,
                       std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = scale * std::exp(a + b * z[k]);
}

constexpr Kernels kScalar{
    "scalar",          phi_batch_scalar,          composed_gap_scalar,
    insurer_exponent_scalar, reinsurer_exponent_scalar, exp_affine_scalar,
};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace stacknash::simd
