#include <cstdlib>
#include <string_view>

#include "stacknash/simd/kernels.hpp"

namespace stacknash::simd {

namespace {

const Kernels& select_kernels() {
  const char* forced = std::getenv("STACKNASH_SIMD");
  if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
  if (const Kernels* k = avx2_kernels()) return *k;
  return scalar_kernels();
}

}  // namespace

const Kernels& active_kernels() {
  static const Kernels& k = select_kernels();
  return k;
}

void phi_batch(const ReinsurerSide& side, std::span<const double> x, std::span<double> out) {
  active_kernels().phi_batch(side, x.data(), out.data(), x.size());
}

void composed_gap(const ReinsurerSide& first, const ReinsurerSide& second, std::span<const double> x,
                  std::span<double> out) {
  active_kernels().composed_gap(first, second, x.data(), out.data(), x.size());
}

}  // namespace stacknash::simd
