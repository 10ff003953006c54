#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scatternet/scattering.hpp"

namespace scatternet {

Complex green_outgoing(const Point3& r, const Point3& r_src, double k) {
  const double dx = r[0] - r_src[0];
  const double dy = r[1] - r_src[1];
  const double dz = r[2] - r_src[2];
  const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (dist == 0.0) throw std::domain_error("green_outgoing: source and field point coincide");
  return -std::polar(1.0, k * dist) / (4.0 * std::numbers::pi * dist);
}

ScatterPotential::ScatterPotential(Grid3D grid) : grid_(grid), values_(grid.size(), 0.0) {
  grid_.validate();
}

ScatterPotential::ScatterPotential(Grid3D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.size()) throw std::invalid_argument("ScatterPotential: value count != grid size");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("ScatterPotential: non-finite value");
  }
}

ScatterPotential::Support ScatterPotential::support() const {
  Support s;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == 0.0) continue;
    const auto p = grid_.point(i);
    if (s.empty) {
      s.lo = p;
      s.hi = p;
      s.empty = false;
      continue;
    }
    for (int a = 0; a < 3; ++a) {
      s.lo[a] = std::min(s.lo[a], p[a]);
      s.hi[a] = std::max(s.hi[a], p[a]);
    }
  }
  return s;
}

}  // namespace scatternet
