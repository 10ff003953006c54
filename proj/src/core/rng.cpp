#include "scatternet/rng.hpp"

#include <cmath>
#include <numbers>

namespace scatternet {

namespace {
__extension__ typedef unsigned __int128 U128;
}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::normal() {
  // 1 - u keeps the logarithm argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::index(std::size_t n) {
  const U128 wide = static_cast<U128>(engine_()) * n;
  return static_cast<std::size_t>(wide >> 64);
}

}  // namespace scatternet
