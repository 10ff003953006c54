#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scatternet/io.hpp"

namespace scatternet {

using Complex = std::complex<double>;

/// Regular sampling grid. Axis 0 varies fastest in the linear index, so a 2D
/// grid is stored row-major with rows along axis 1 (y).
template <std::size_t Dim>
struct Grid {
  std::array<std::size_t, Dim> extent{};
  std::array<double, Dim> spacing{};
  std::array<double, Dim> origin{};

  void validate() const {
    for (std::size_t a = 0; a < Dim; ++a) {
      if (extent[a] < 1) throw std::invalid_argument("Grid: sample count must be >= 1");
      if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a])) {
        throw std::invalid_argument("Grid: spacing must be positive and finite");
      }
      if (!std::isfinite(origin[a])) throw std::invalid_argument("Grid: origin must be finite");
    }
  }

  std::size_t size() const {
    std::size_t n = 1;
    for (std::size_t e : extent) n *= e;
    return n;
  }

  double coord(std::size_t axis, std::size_t i) const {
    return origin[axis] + spacing[axis] * static_cast<double>(i);
  }

  std::array<std::size_t, Dim> unravel(std::size_t linear) const {
    std::array<std::size_t, Dim> idx{};
    for (std::size_t a = 0; a < Dim; ++a) {
      idx[a] = linear % extent[a];
      linear /= extent[a];
    }
    return idx;
  }

  std::size_t ravel(const std::array<std::size_t, Dim>& idx) const {
    std::size_t linear = 0;
    for (std::size_t a = Dim; a-- > 0;) linear = linear * extent[a] + idx[a];
    return linear;
  }

  std::array<double, Dim> point(std::size_t linear) const {
    const auto idx = unravel(linear);
    std::array<double, Dim> p{};
    for (std::size_t a = 0; a < Dim; ++a) p[a] = coord(a, idx[a]);
    return p;
  }

  double cell_volume() const {
    double v = 1.0;
    for (double s : spacing) v *= s;
    return v;
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

using Grid1D = Grid<1>;
using Grid2D = Grid<2>;
using Grid3D = Grid<3>;

/// Same spacing on every axis, origin at zero unless given.
template <std::size_t Dim>
Grid<Dim> uniform_grid(std::array<std::size_t, Dim> extent, double spacing,
                       std::array<double, Dim> origin = {}) {
  Grid<Dim> g;
  g.extent = extent;
  g.spacing.fill(spacing);
  g.origin = origin;
  g.validate();
  return g;
}

/// Wave vector k, reciprocal length units.
template <std::size_t Dim>
using WaveVector = std::array<double, Dim>;

/// Displacement in length units.
template <std::size_t Dim>
using Displacement = std::array<double, Dim>;

/// Natural units by default: with hbar = 1 momentum and wave vector coincide.
struct PhysConstants {
  double hbar = 1.0;
};

/// Complex amplitudes sampled on a grid. Immutable after construction.
template <std::size_t Dim>
class WaveField {
 public:
  explicit WaveField(Grid<Dim> grid) : grid_(grid), values_(grid.size()) { grid_.validate(); }

  WaveField(Grid<Dim> grid, std::vector<Complex> values) : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("WaveField: amplitude count " + std::to_string(values_.size()) +
                                  " != grid size " + std::to_string(grid_.size()));
    }
    for (const Complex& v : values_) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw std::invalid_argument("WaveField: non-finite amplitude");
      }
    }
  }

  const Grid<Dim>& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  const Complex& at(const std::array<std::size_t, Dim>& idx) const { return values_[grid_.ravel(idx)]; }

  std::vector<double> modulus() const {
    std::vector<double> m(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) m[i] = std::abs(values_[i]);
    return m;
  }

 private:
  Grid<Dim> grid_;
  std::vector<Complex> values_;
};

template <std::size_t Dim>
double dot(const std::array<double, Dim>& a, const std::array<double, Dim>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < Dim; ++i) s += a[i] * b[i];
  return s;
}

/// amplitude * exp(i k.x) at every grid point. Stationary: no time factor.
template <std::size_t Dim>
WaveField<Dim> plane_wave(const Grid<Dim>& grid, const WaveVector<Dim>& k, double amplitude) {
  grid.validate();
  std::vector<Complex> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::polar(amplitude, dot(k, grid.point(i)));
  return WaveField<Dim>(grid, std::move(v));
}

/// Eigenvalue of the translation operator on a plane wave: exp(i k.a).
template <std::size_t Dim>
Complex translation_phase(const WaveVector<Dim>& k, const Displacement<Dim>& a) {
  return std::polar(1.0, dot(k, a));
}

/// Momentum form exp(i a.p / hbar); identical to the wave-vector form for p = hbar k.
template <std::size_t Dim>
Complex translation_phase_momentum(const std::array<double, Dim>& p, const Displacement<Dim>& a,
                                   const PhysConstants& units = {}) {
  if (!(units.hbar > 0.0)) throw std::invalid_argument("translation_phase: hbar must be positive");
  return std::polar(1.0, dot(p, a) / units.hbar);
}

struct SeriesOptions {
  /// Highest derivative order the series may use. Finite differences beyond
  /// this are dominated by rounding at double precision.
  int max_order = 8;
};

/// Truncated translation series sum_{n=0..n_terms} a^n/n! f^(n)(x), with each
/// derivative taken by a central finite-difference stencil. Samples too close
/// to the boundary for a stencil keep only the terms whose stencil fits; use
/// series_margin() to find the samples that carry the full series.
WaveField<1> translate_series(const WaveField<1>& f, double a, int n_terms, const SeriesOptions& opts = {});

/// Half-width of the stencil used for the n-th derivative.
int stencil_half_width(int derivative_order);

/// Number of samples at each end that do not carry the full n_terms series.
std::size_t series_margin(int n_terms);

/// Moves the content by a whole number of samples: out[i] = f[i - a].
/// Samples shifted in from outside the aperture are zero.
WaveField<1> shift_exact(const WaveField<1>& f, long a);

/// CSV rows (index, re, im) in linear-index order.
template <std::size_t Dim>
std::string field_csv(const WaveField<Dim>& f) {
  io::CsvTable t({"index", "re", "im"});
  for (std::size_t i = 0; i < f.size(); ++i) t.add_row({static_cast<double>(i), f[i].real(), f[i].imag()});
  return t.str();
}

/// 16-bit PGM of |psi|, scaled so the largest modulus is white.
inline std::string modulus_pgm(const WaveField<2>& f) {
  const auto m = f.modulus();
  return io::encode_pgm16(f.grid().extent[0], f.grid().extent[1], m, io::GreyScale::kMaxModulus);
}

}  // namespace scatternet
