#include "stacknash/rng.hpp"

#include <cmath>
#include <numbers>

namespace stacknash::rng {

NormalPair normal_pair(const Philox4x32& gen, std::uint64_t stream, std::uint64_t block) noexcept {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block),
                                static_cast<std::uint32_t>(block >> 32),
                                static_cast<std::uint32_t>(stream),
                                static_cast<std::uint32_t>(stream >> 32)};
  const auto r = gen(ctr);
  const double u1 = to_open_unit(r[0], r[1]);
  const double u2 = to_open_unit(r[2], r[3]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

void fill_normals(const Philox4x32& gen, std::uint64_t stream, double* out,
                  std::uint64_t count) noexcept {
  std::uint64_t k = 0;
  for (std::uint64_t block = 0; k < count; ++block) {
    const NormalPair z = normal_pair(gen, stream, block);
    out[k++] = z.first;
    if (k < count) out[k++] = z.second;
  }
}

}  // namespace stacknash::rng
