#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace scatternet {

/// Seeded pseudo-random stream.
///
/// The engine is std::mt19937_64 seeded through std::seed_seq, both of which
/// are fully specified by the standard. The conversions to floating point are
/// done here rather than through <random> distributions, whose algorithms are
/// implementation-defined, so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one variate per call).
  double normal();

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

  bool bernoulli(double p) { return uniform() < p; }

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace scatternet
