#pragma once

#include <cstddef>
#include <span>

#include "stacknash/best_response.hpp"

// Batched inner loops behind the grid scans and the Monte Carlo reduction.
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active table is picked once at first use from CPU features;
// setting STACKNASH_SIMD=scalar forces the reference kernels.
namespace stacknash::simd {

// Insurer exponent L(p) with utility -(1/d0) exp(L):
//   L = base + own1 p1^2 + own2 p2^2 + retained (1 - p1 - p2)^2.
struct InsurerExponent {
  double base = 0.0;      // -d0 (x + (c - mu) tau)
  double own1 = 0.0;      // d0 sigma^2 theta1 tau
  double own2 = 0.0;      // d0 sigma^2 theta2 tau
  double retained = 0.0;  // d0^2 sigma^2 tau / 2
};

// Reinsurer i exponent as a function of its own loading theta_i, with the
// insurer playing its best response and the rival loading fixed.
struct ReinsurerExponent {
  double delta0 = 0.0;
  double own_delta = 0.0;
  double rival_theta = 0.0;
  double rival_weight = 0.0;
  double sigma = 0.0;
  double tau = 0.0;
  double y = 0.0;
};

struct Kernels {
  const char* name;

  // out[k] = phi(side, x[k]). Inputs must satisfy phi's domain.
  void (*phi_batch)(const ReinsurerSide& side, const double* x, double* out, std::size_t n);

  // out[k] = phi(first, phi(second, x[k])) - x[k].
  void (*composed_gap)(const ReinsurerSide& first, const ReinsurerSide& second, const double* x,
                       double* out, std::size_t n);

  // out[k] = L(p1, p2[k]).
  void (*insurer_exponent)(const InsurerExponent& e, double p1, const double* p2, double* out,
                           std::size_t n);

  // out[k] = reinsurer exponent at theta_i = theta[k].
  void (*reinsurer_exponent)(const ReinsurerExponent& e, const double* theta, double* out,
                             std::size_t n);

  // out[k] = scale * exp(a + b z[k]).
  void (*exp_affine)(double scale, double a, double b, const double* z, double* out,
                     std::size_t n);
};

const Kernels& scalar_kernels();

// nullptr when not compiled in or not supported by this CPU.
const Kernels* avx2_kernels();

const Kernels& active_kernels();

// Span conveniences over the active table.
void phi_batch(const ReinsurerSide& side, std::span<const double> x, std::span<double> out);
void composed_gap(const ReinsurerSide& first, const ReinsurerSide& second, std::span<const double> x,
                  std::span<double> out);

}  // namespace stacknash::simd
