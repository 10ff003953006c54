#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scatternet/numerics.hpp"
#include "scatternet/parallel.hpp"
#include "scatternet/scattering.hpp"

namespace scatternet {

namespace {

struct PointSource {
  Point3 position;
  Complex strength;  // U psi_in dV
};

bool inside(const ScatterPotential::Support& s, const Point3& p) {
  if (s.empty) return false;
  for (int a = 0; a < 3; ++a) {
    if (p[a] < s.lo[a] || p[a] > s.hi[a]) return false;
  }
  return true;
}

}  // namespace

WaveField<2> born_scattered(const WaveField<3>& incident, const ScatterPotential& potential,
                            const ScreenPlane& screen, double k, const BornOptions& opts) {
  if (!(incident.grid() == potential.grid())) {
    throw std::invalid_argument("born_scattered: incident field must live on the potential's grid");
  }
  screen.grid.validate();
  const auto support = potential.support();
  const std::size_t n_screen = screen.grid.size();
  for (std::size_t i = 0; i < n_screen; ++i) {
    if (inside(support, screen.point(i))) {
      throw std::domain_error("born_scattered: screen point inside the potential's support");
    }
  }

  const double dv = potential.grid().cell_volume();
  std::vector<PointSource> sources;
  for (std::size_t j = 0; j < potential.grid().size(); ++j) {
    if (potential[j] == 0.0) continue;
    sources.push_back({potential.grid().point(j), potential[j] * incident[j] * dv});
  }

  std::vector<Complex> out(n_screen);
  parallel_for(n_screen, opts.workers, [&](std::size_t i) {
    const Point3 r = screen.point(i);
    std::vector<Complex> terms(sources.size());
    for (std::size_t j = 0; j < sources.size(); ++j) {
      terms[j] = green_outgoing(r, sources[j].position, k) * sources[j].strength;
    }
    out[i] = -pairwise_sum<Complex>(terms);
  });
  return WaveField<2>(screen.grid, std::move(out));
}

WaveField<2> born_scatter(const IncidentPlaneWave& incident, const ScatterPotential& potential,
                          const ScreenPlane& screen, double k, const BornOptions& opts) {
  const auto in_field = plane_wave(potential.grid(), incident.k, incident.amplitude);
  const auto scattered = born_scattered(in_field, potential, screen, k, opts);
  std::vector<Complex> total(scattered.size());
  for (std::size_t i = 0; i < total.size(); ++i) total[i] = incident.at(screen.point(i)) + scattered[i];
  return WaveField<2>(screen.grid, std::move(total));
}

void validate(const SlitAperture& a) {
  if (a.count < 1) throw std::invalid_argument("SlitAperture: need at least one slit");
  if (!(a.width > 0.0)) throw std::invalid_argument("SlitAperture: width must be positive");
  if (a.count >= 2 && !(a.separation > a.width)) {
    throw std::invalid_argument("SlitAperture: separation must exceed the slit width");
  }
  if (!(a.screen_distance > 0.0)) throw std::invalid_argument("SlitAperture: screen distance must be positive");
}

IntensityProfile double_slit_intensity(const SlitAperture& aperture, double k, const Grid1D& screen,
                                       const SlitOptions& opts) {
  validate(aperture);
  screen.validate();
  if (!(k > 0.0)) throw std::invalid_argument("double_slit_intensity: k must be positive");
  if (opts.samples_per_wavelength < 2) {
    throw std::invalid_argument("double_slit_intensity: need at least 2 samples per wavelength");
  }
  const double lambda = 2.0 * std::numbers::pi / k;
  const double screen_extent = screen.spacing[0] * static_cast<double>(screen.extent[0] - 1);
  if (!(lambda < screen_extent)) {
    throw std::invalid_argument("double_slit_intensity: wavelength must be shorter than the screen");
  }

  std::vector<double> centres(static_cast<std::size_t>(aperture.count));
  for (int j = 0; j < aperture.count; ++j) {
    centres[static_cast<std::size_t>(j)] = (j - 0.5 * (aperture.count - 1)) * aperture.separation;
  }
  const double span = aperture.separation * (aperture.count - 1) + aperture.width;

  // Even sample count: samples sit at half-integer multiples of dy, so edges
  // that are whole multiples of dy never coincide with a sample.
  const double dy = lambda / opts.samples_per_wavelength;
  auto ny = static_cast<std::size_t>(std::ceil(span / dy)) + 2;
  ny += ny % 2;
  Grid3D grid;
  grid.extent = {1, ny, 1};
  grid.spacing = {dy, dy, dy};
  grid.origin = {0.0, -0.5 * static_cast<double>(ny - 1) * dy, 0.0};

  std::vector<double> u(ny, 0.0);
  std::size_t open = 0;
  for (std::size_t m = 0; m < ny; ++m) {
    const double y = grid.coord(1, m);
    for (double c : centres) {
      if (std::fabs(y - c) < 0.5 * aperture.width) {
        u[m] = 1.0;
        ++open;
        break;
      }
    }
  }
  if (open == 0) throw std::invalid_argument("double_slit_intensity: slits narrower than the aperture sampling");
  const ScatterPotential mask(grid, std::move(u));

  ScreenPlane plane;
  plane.grid.extent = {1, screen.extent[0]};
  plane.grid.spacing = {1.0, screen.spacing[0]};
  plane.grid.origin = {0.0, screen.origin[0]};
  plane.z = aperture.screen_distance;

  const auto incident = plane_wave(grid, WaveVector<3>{0.0, 0.0, k}, 1.0);
  const auto field = born_scattered(incident, mask, plane, k, BornOptions{opts.workers});

  IntensityProfile profile;
  profile.position.resize(screen.extent[0]);
  profile.intensity.resize(screen.extent[0]);
  double peak = 0.0;
  for (std::size_t i = 0; i < screen.extent[0]; ++i) {
    profile.position[i] = screen.coord(0, i);
    profile.intensity[i] = std::norm(field[i]);
    peak = std::max(peak, profile.intensity[i]);
  }
  for (double& v : profile.intensity) v /= peak;

  // Fraunhofer distance span^2 / lambda.
  if (aperture.screen_distance < span * span / lambda) {
    profile.warnings.push_back("far-field condition not met: L=" + io::format_double(aperture.screen_distance) +
                               " < aperture^2/lambda=" + io::format_double(span * span / lambda));
  }
  return profile;
}

}  // namespace scatternet
