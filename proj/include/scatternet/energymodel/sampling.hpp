#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scatternet/energymodel/rbm.hpp"

namespace scatternet::energymodel {

struct ScheduleOptions {
  std::size_t sweeps_per_rung = 1;
  /// The whole ladder is traversed this many times.
  std::size_t cycles = 1;
  /// Appends a rung at beta = 1 when the ladder ends elsewhere. With false the
  /// chain is left at the last rung (used to observe absorption as beta grows).
  bool return_to_unit = true;
};

struct TracePoint {
  double beta = 1.0;
  double energy = 0.0;  // after the sweep
};

struct SampleRun {
  /// Configurations after every sweep performed at beta == 1, in order.
  std::vector<BinaryConfig> samples;
  /// One entry per sweep over the whole run.
  std::vector<TracePoint> trace;
  ChainState final_state;
};

/// Annealing: beta ladder non-decreasing (toward low temperature), then back
/// to unit temperature.
SampleRun anneal_sample(const RbmParams& p, std::span<const double> ladder, const BinaryConfig& init,
                        std::uint64_t seed, std::uint64_t stream = 0, const ScheduleOptions& opts = {});

/// Tempering: beta ladder non-increasing (toward high temperature), then
/// non-decreasing back to unit temperature.
SampleRun temper_sample(const RbmParams& p, std::span<const double> ladder, const BinaryConfig& init,
                        std::uint64_t seed, std::uint64_t stream = 0, const ScheduleOptions& opts = {});

/// Bit rows with header v0..v{n-1}, h0..h{m-1}.
std::string samples_csv(std::span<const BinaryConfig> samples);

/// Empirical distribution of the visible patterns (index = visible bits).
std::vector<double> visible_histogram(std::span<const BinaryConfig> samples, std::size_t n_visible);

}  // namespace scatternet::energymodel
