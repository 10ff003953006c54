#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "scatternet/wavefield.hpp"

namespace scatternet {

using Point3 = std::array<double, 3>;

/// Outgoing free-space Green function -exp(ik|r - r'|) / (4 pi |r - r'|).
/// Throws std::domain_error when the points coincide.
Complex green_outgoing(const Point3& r, const Point3& r_src, double k);

/// Real interaction potential sampled on a 3D grid.
class ScatterPotential {
 public:
  explicit ScatterPotential(Grid3D grid);  // U = 0 everywhere
  ScatterPotential(Grid3D grid, std::vector<double> values);

  /// Samples u(point) at every voxel centre.
  template <typename Fn>
  static ScatterPotential sample(const Grid3D& grid, Fn&& u) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = u(grid.point(i));
    return ScatterPotential(grid, std::move(v));
  }

  const Grid3D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Closed bounding box of the nonzero voxels, in coordinates. Empty when U = 0.
  struct Support {
    bool empty = true;
    Point3 lo{};
    Point3 hi{};
  };
  Support support() const;

 private:
  Grid3D grid_;
  std::vector<double> values_;
};

/// A flat observation screen: the 2D grid supplies (x, y), the plane sits at z.
struct ScreenPlane {
  Grid2D grid;
  double z = 0.0;

  Point3 point(std::size_t i) const {
    const auto p = grid.point(i);
    return {p[0], p[1], z};
  }
};

struct IncidentPlaneWave {
  WaveVector<3> k{};
  double amplitude = 1.0;

  Complex at(const Point3& r) const { return std::polar(amplitude, dot(k, r)); }
};

struct BornOptions {
  /// Screen points are independent, so any worker count gives identical bits.
  unsigned workers = 1;
};

/// Scattered part of the first Born approximation on the screen:
///   -sum_{r'} G(r, r') U(r') psi_in(r') dV
/// with dV the voxel volume of the potential grid. The voxel sum uses a fixed
/// pairwise reduction. Throws std::domain_error if a screen point lies inside
/// the support of U.
WaveField<2> born_scattered(const WaveField<3>& incident, const ScatterPotential& potential,
                            const ScreenPlane& screen, double k, const BornOptions& opts = {});

/// Incident plus first-Born scattered wave on the screen.
WaveField<2> born_scatter(const IncidentPlaneWave& incident, const ScatterPotential& potential,
                          const ScreenPlane& screen, double k, const BornOptions& opts = {});

/// Slit mask geometry, length units. Slits are centred symmetrically about
/// the optical axis and illuminated by a unit plane wave along +z.
struct SlitAperture {
  int count = 2;
  double width = 1.0;
  double separation = 10.0;       // centre-to-centre
  double screen_distance = 1e4;  // L
};

void validate(const SlitAperture& aperture);

struct SlitOptions {
  /// Aperture sampling density. Slit edges snap to this lattice.
  int samples_per_wavelength = 20;
  unsigned workers = 1;
};

struct IntensityProfile {
  std::vector<double> position;   // screen coordinate
  std::vector<double> intensity;  // normalised so the maximum is 1
  std::vector<std::string> warnings;
};

/// Screen intensity behind a slit mask. Each open aperture sample acts as a
/// point scatterer (first Born) and the field is propagated with
/// green_outgoing to a flat screen at distance L.
IntensityProfile double_slit_intensity(const SlitAperture& aperture, double k, const Grid1D& screen,
                                       const SlitOptions& opts = {});

/// Convolution kernel of a neuron derived from its potential: entry (x', y')
/// is sum_{z'} G(0, r'; k) U(r'), with r' measured from the neuron, which sits
/// at voxel (nx/2, ny/2, nz/2). The neuron's own voxel (distance 0) is left
/// out of the sum. Entries are stored row-major, offset (-h, -h) first, where
/// h = window / 2; there is no flip, matching the cross-correlation used by
/// conv2d.
struct ScatterKernel {
  std::size_t window = 0;
  std::vector<Complex> values;
  double k = 0.0;
  Complex bias{};

  const Complex& at(long dx, long dy) const;
};

ScatterKernel scatter_kernel(const ScatterPotential& potential, double k, std::size_t window,
                             Complex bias = {});

/// s = |sum K psi + b| and S = s^2.
struct NeuronResponse {
  double amplitude = 0.0;
  double intensity = 0.0;
};

NeuronResponse neuron_response(const ScatterKernel& kernel, const WaveField<2>& patch);

std::string kernel_csv(const ScatterKernel& kernel);
std::string kernel_modulus_pgm(const ScatterKernel& kernel);

/// Integral over a window of length r of sin(k(x + a)) da, closed form
/// (2/k) sin(kr/2) sin(kx + kr/2).
double box_conv_sine(double k, double r, double x);

/// Squared amplitude of box_conv_sine's oscillation: (4/k^2) sin^2(kr/2).
double box_conv_intensity(double k, double r);

}  // namespace scatternet
