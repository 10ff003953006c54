#include "scatternet/harness/gratings.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scatternet::harness {

void GratingDataset::validate() const {
  if (size < 3) throw std::invalid_argument("gratings: image size must be >= 3");
  if (orientations_deg.size() < 2) throw std::invalid_argument("gratings: need at least two classes");
  if (samples_per_class < 1) throw std::invalid_argument("gratings: need at least one sample per class");
  if (!(wavenumber > 0.0) || !std::isfinite(wavenumber)) throw std::invalid_argument("gratings: wavenumber > 0");
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw std::invalid_argument("gratings: noise must be >= 0");
  for (double o : orientations_deg) {
    if (!std::isfinite(o)) throw std::invalid_argument("gratings: orientation must be finite");
  }
}

std::vector<nn::LabeledImage> gen_gratings(const GratingDataset& cfg, std::uint64_t seed, std::uint64_t stream) {
  cfg.validate();
  Rng rng(seed, stream);
  const nn::Shape shape{1, cfg.size, cfg.size};
  std::vector<nn::LabeledImage> out;
  out.reserve(cfg.classes() * cfg.samples_per_class);
  for (std::size_t label = 0; label < cfg.classes(); ++label) {
    const double t = cfg.orientations_deg[label] * std::numbers::pi / 180.0;
    const double kx = cfg.wavenumber * std::cos(t);
    const double ky = cfg.wavenumber * std::sin(t);
    for (std::size_t n = 0; n < cfg.samples_per_class; ++n) {
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      std::vector<double> px(shape.size());
      for (std::size_t y = 0; y < cfg.size; ++y) {
        for (std::size_t x = 0; x < cfg.size; ++x) {
          double v = std::sin(kx * static_cast<double>(x) + ky * static_cast<double>(y) + phase);
          if (cfg.noise > 0.0) v += cfg.noise * rng.normal();
          px[y * cfg.size + x] = v;
        }
      }
      out.push_back({nn::FeatureTensor(shape, std::move(px)), label});
    }
  }
  return out;
}

}  // namespace scatternet::harness
