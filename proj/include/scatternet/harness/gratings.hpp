#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scatternet/neuralnet/network.hpp"

namespace scatternet::harness {

/// Synthetic sine gratings whose class is the wave-vector direction:
///   I(x, y) = sin(k (x cos t + y sin t) + phi) + noise * N(0, 1)
/// with x the column, y the row, t the class orientation and phi uniform in
/// [0, 2 pi) per image.
struct GratingDataset {
  std::size_t size = 16;
  std::vector<double> orientations_deg{0.0, 45.0, 90.0, 135.0};
  double wavenumber = 1.2;  // radians per pixel
  std::size_t samples_per_class = 500;
  double noise = 0.3;

  void validate() const;
  std::size_t classes() const { return orientations_deg.size(); }
};

/// Images ordered class by class. A pure function of (cfg, seed, stream).
std::vector<nn::LabeledImage> gen_gratings(const GratingDataset& cfg, std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace scatternet::harness
