#include "stacknash/simd/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define STACKNASH_HAVE_AVX2 1
#include <immintrin.h>
#else
#define STACKNASH_HAVE_AVX2 0
#endif

namespace stacknash::simd {

#if STACKNASH_HAVE_AVX2

namespace {

#define SN_AVX2 __attribute__((target("avx2,fma")))

// Runs `body` over full 4-lane blocks, then once more on a padded copy of the
// tail so every element goes through identical arithmetic.
template <class Body>
SN_AVX2 inline void for_each_block(const double* in, double* out, std::size_t n, double pad,
                                   Body body) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) _mm256_storeu_pd(out + k, body(_mm256_loadu_pd(in + k)));
  if (k < n) {
    alignas(32) double tmp_in[4] = {pad, pad, pad, pad};
    alignas(32) double tmp_out[4];
    for (std::size_t t = 0; k + t < n; ++t) tmp_in[t] = in[k + t];
    _mm256_store_pd(tmp_out, body(_mm256_load_pd(tmp_in)));
    for (std::size_t t = 0; k + t < n; ++t) out[k + t] = tmp_out[t];
  }
}

struct PhiCoeffs {
  __m256d num2, num1, den1, den0, reduced_num0;
  bool reduced;
};

SN_AVX2 inline PhiCoeffs phi_coeffs(const ReinsurerSide& s) {
  const double d0 = s.delta0;
  const double di = s.own_delta;
  const double w = s.rival_weight;
  PhiCoeffs c;
  c.reduced = (w == 0.0);
  c.num2 = _mm256_set1_pd(d0 + 2.0 * di);
  c.num1 = _mm256_set1_pd((1.0 + w) * d0 * di);
  c.den1 = _mm256_set1_pd((1.0 + 2.0 * w) * d0 + 2.0 * w * di);
  c.den0 = _mm256_set1_pd(w * (1.0 + w) * d0 * di);
  c.reduced_num0 = _mm256_set1_pd(d0 * di);
  return c;
}

SN_AVX2 inline __m256d phi_vec(const PhiCoeffs& c, double d0, __m256d x) {
  const __m256d two = _mm256_set1_pd(2.0);
  if (c.reduced) {
    const __m256d num = _mm256_fmadd_pd(c.num2, x, c.reduced_num0);
    const __m256d den = _mm256_fmadd_pd(two, x, _mm256_set1_pd(d0));
    return _mm256_div_pd(num, den);
  }
  const __m256d num = _mm256_mul_pd(_mm256_fmadd_pd(c.num2, x, c.num1), x);
  const __m256d den = _mm256_fmadd_pd(_mm256_fmadd_pd(two, x, c.den1), x, c.den0);
  return _mm256_div_pd(num, den);
}

// exp(x) by range reduction x = n ln2 + r and a (3,4) Pade form on r
// (Cephes coefficients); accurate to about one ulp on [-708, 709].
SN_AVX2 inline __m256d exp_pd(__m256d x) {
  x = _mm256_min_pd(x, _mm256_set1_pd(709.0));
  x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));
  const __m256d fx = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634073599)),
                                     _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_pd(fx, _mm256_set1_pd(6.93145751953125E-1), x);
  x = _mm256_fnmadd_pd(fx, _mm256_set1_pd(1.42860682030941723212E-6), x);
  const __m256d xx = _mm256_mul_pd(x, x);

  __m256d px = _mm256_set1_pd(1.26177193074810590878E-4);
  px = _mm256_fmadd_pd(px, xx, _mm256_set1_pd(3.02994407707441961300E-2));
  px = _mm256_fmadd_pd(px, xx, _mm256_set1_pd(9.99999999999999999910E-1));
  px = _mm256_mul_pd(px, x);

  __m256d qx = _mm256_set1_pd(3.00198505138664455042E-6);
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.52448340349684104192E-3));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.27265548208155028766E-1));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.00000000000000000009E0));

  __m256d r = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, _mm256_set1_pd(1.0));

  const __m128i n32 = _mm256_cvtpd_epi32(fx);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
  n64 = _mm256_slli_epi64(n64, 52);
  return _mm256_mul_pd(r, _mm256_castsi256_pd(n64));
}

SN_AVX2 void phi_batch_avx2(const ReinsurerSide& side, const double* x, double* out,
                            std::size_t n) {
  const PhiCoeffs c = phi_coeffs(side);
  const double d0 = side.delta0;
  for_each_block(x, out, n, 1.0, [&](__m256d v) SN_AVX2 { return phi_vec(c, d0, v); });
}

SN_AVX2 void composed_gap_avx2(const ReinsurerSide& first, const ReinsurerSide& second,
                               const double* x, double* out, std::size_t n) {
  const PhiCoeffs c1 = phi_coeffs(first);
  const PhiCoeffs c2 = phi_coeffs(second);
  const double d01 = first.delta0;
  const double d02 = second.delta0;
  for_each_block(x, out, n, 1.0, [&](__m256d v) SN_AVX2 {
    return _mm256_sub_pd(phi_vec(c1, d01, phi_vec(c2, d02, v)), v);
  });
}

SN_AVX2 void insurer_exponent_avx2(const InsurerExponent& e, double p1, const double* p2,
                                   double* out, std::size_t n) {
  const __m256d head = _mm256_set1_pd(e.base + e.own1 * p1 * p1);
  const __m256d own2 = _mm256_set1_pd(e.own2);
  const __m256d retained = _mm256_set1_pd(e.retained);
  const __m256d rest = _mm256_set1_pd(1.0 - p1);
  for_each_block(p2, out, n, 0.0, [&](__m256d q) SN_AVX2 {
    const __m256d r = _mm256_sub_pd(rest, q);
    const __m256d acc = _mm256_fmadd_pd(_mm256_mul_pd(own2, q), q, head);
    return _mm256_fmadd_pd(_mm256_mul_pd(retained, r), r, acc);
  });
}

SN_AVX2 void reinsurer_exponent_avx2(const ReinsurerExponent& e, const double* theta, double* out,
                                     std::size_t n) {
  const double s2 = e.sigma * e.sigma;
  const __m256d d0 = _mm256_set1_pd(e.delta0);
  const __m256d d0tj = _mm256_set1_pd(e.delta0 * e.rival_theta);
  const __m256d slope = _mm256_set1_pd(e.delta0 + 2.0 * e.rival_theta);
  const __m256d w = _mm256_set1_pd(e.rival_weight);
  const __m256d wtj = _mm256_set1_pd(e.rival_weight * e.rival_theta);
  const __m256d drift_scale = _mm256_set1_pd(-e.own_delta * s2 * e.tau);
  const __m256d diff_scale = _mm256_set1_pd(0.5 * e.own_delta * e.own_delta * s2 * e.tau);
  const __m256d base = _mm256_set1_pd(-e.own_delta * e.y);
  for_each_block(theta, out, n, 1.0, [&](__m256d ti) SN_AVX2 {
    const __m256d den = _mm256_fmadd_pd(slope, ti, d0tj);
    const __m256d pi = _mm256_div_pd(d0tj, den);
    const __m256d pj = _mm256_div_pd(_mm256_mul_pd(d0, ti), den);
    const __m256d own = _mm256_mul_pd(_mm256_mul_pd(ti, pi), pi);
    const __m256d drift = _mm256_fnmadd_pd(_mm256_mul_pd(wtj, pj), pj, own);
    const __m256d diff = _mm256_fnmadd_pd(w, pj, pi);
    const __m256d acc = _mm256_fmadd_pd(drift_scale, drift, base);
    return _mm256_fmadd_pd(_mm256_mul_pd(diff_scale, diff), diff, acc);
  });
}

SN_AVX2 void exp_affine_avx2(double scale, double a, double b, const double* z, double* out,
                             std::size_t n) {
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  for_each_block(z, out, n, 0.0, [&](__m256d v) SN_AVX2 {
    return _mm256_mul_pd(vs, exp_pd(_mm256_fmadd_pd(vb, v, va)));
  });
}

#undef SN_AVX2

constexpr Kernels kAvx2{
    "avx2",          phi_batch_avx2,          composed_gap_avx2,
    insurer_exponent_avx2, reinsurer_exponent_avx2, exp_affine_avx2,
};

}  // namespace

const Kernels* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2 : nullptr;
}

#else

const Kernels* avx2_kernels() { return nullptr; }

#endif

}  // namespace stacknash::simd
