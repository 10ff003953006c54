#include <algorithm>
#include <cmath>
#include <numbers>

#include "checks.hpp"
#include "scatternet/oracles.hpp"
#include "scatternet/scattering.hpp"
#include "scatternet/wavefield.hpp"

namespace scatternet::harness::detail {

void add_wavefield_checks(std::vector<Check>& out) {
  out.push_back({"wavefield.phase_group", [](std::uint64_t seed) {
                   Rng rng(seed, 100);
                   double worst = 0.0;
                   for (int t = 0; t < 1000; ++t) {
                     const WaveVector<2> k{rng.uniform(-5, 5), rng.uniform(-5, 5)};
                     const Displacement<2> a{rng.uniform(-3, 3), rng.uniform(-3, 3)};
                     const Displacement<2> b{rng.uniform(-3, 3), rng.uniform(-3, 3)};
                     const Displacement<2> ab{a[0] + b[0], a[1] + b[1]};
                     worst = std::max(worst, std::abs(translation_phase(k, a) * translation_phase(k, b) -
                                                      translation_phase(k, ab)));
                   }
                   return make_check("wavefield.phase_group", worst, "<=", 1e-12);
                 }});
  out.push_back({"wavefield.phase_unit_modulus", [](std::uint64_t seed) {
                   Rng rng(seed, 101);
                   double worst = 0.0;
                   for (int t = 0; t < 1000; ++t) {
                     const WaveVector<3> k{rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)};
                     const Displacement<3> a{rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)};
                     worst = std::max(worst, std::abs(std::abs(translation_phase(k, a)) - 1.0));
                   }
                   return make_check("wavefield.phase_unit_modulus", worst, "<=", 1e-12);
                 }});
  out.push_back({"wavefield.series_monotone", [](std::uint64_t) {
                   // Band-limited input, k * spacing = 0.45; errors measured on
                   // the samples that carry the full eight-term series.
                   const double k = 0.45;
                   const double a = 1.0;
                   const auto grid = uniform_grid<1>({240}, 1.0, {-120.0});
                   const auto f = plane_wave(grid, {k}, 1.0);
                   const std::size_t margin = series_margin(8);
                   double prev = INFINITY;
                   double violations = 0.0;
                   for (int n = 1; n <= 8; ++n) {
                     const auto g = translate_series(f, a, n);
                     double err = 0.0;
                     for (std::size_t i = margin; i + margin < grid.size(); ++i) {
                       err = std::max(err, std::abs(g[i] - std::polar(1.0, k * (grid.coord(0, i) + a))));
                     }
                     if (!(err < prev)) violations += 1.0;
                     prev = err;
                   }
                   return make_check("wavefield.series_monotone", violations, "<=", 0.0);
                 }});
  out.push_back({"wavefield.plane_wave_modulus", [](std::uint64_t seed) {
                   Rng rng(seed, 102);
                   double worst = 0.0;
                   for (int t = 0; t < 20; ++t) {
                     const double amp = rng.uniform(0.1, 10.0);
                     const auto grid = uniform_grid<2>({32, 24}, rng.uniform(0.1, 2.0), {-3.0, 5.0});
                     const auto f = plane_wave(grid, {rng.uniform(-9, 9), rng.uniform(-9, 9)}, amp);
                     for (double m : f.modulus()) worst = std::max(worst, std::abs(m - amp));
                   }
                   return make_check("wavefield.plane_wave_modulus", worst, "<", 1e-12);
                 }});
  out.push_back({"wavefield.shift_roundtrip", [](std::uint64_t seed) {
                   Rng rng(seed, 103);
                   const auto grid = uniform_grid<1>({64}, 1.0);
                   std::vector<Complex> v(64);
                   for (auto& x : v) x = {rng.normal(), rng.normal()};
                   const WaveField<1> f(grid, v);
                   double mismatches = 0.0;
                   for (long a = -7; a <= 7; ++a) {
                     const auto back = shift_exact(shift_exact(f, a), -a);
                     for (std::size_t i = 7; i + 7 < 64; ++i) mismatches += back[i] == f[i] ? 0.0 : 1.0;
                   }
                   return make_check("wavefield.shift_roundtrip", mismatches, "<=", 0.0);
                 }});
}

namespace {

ScatterPotential random_blob(Rng& rng, double centre_z) {
  const auto grid = uniform_grid<3>({4, 4, 3}, 0.5, {-1.0, -1.0, centre_z});
  std::vector<double> v(grid.size());
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return ScatterPotential(grid, std::move(v));
}

}  // namespace

void add_scattering_checks(std::vector<Check>& out) {
  out.push_back({"scattering.green_reciprocity", [](std::uint64_t seed) {
                   Rng rng(seed, 200);
                   double mismatches = 0.0;
                   for (int t = 0; t < 1000; ++t) {
                     const Point3 r{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
                     const Point3 s{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
                     const double k = rng.uniform(0, 10);
                     mismatches += green_outgoing(r, s, k) == green_outgoing(s, r, k) ? 0.0 : 1.0;
                   }
                   return make_check("scattering.green_reciprocity", mismatches, "<=", 0.0);
                 }});
  out.push_back({"scattering.born_linearity", [](std::uint64_t seed) {
                   Rng rng(seed, 201);
                   const auto u1 = random_blob(rng, 0.0);
                   const auto u2 = random_blob(rng, 0.0);
                   std::vector<double> sum(u1.values().size());
                   for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = u1[i] + u2[i];
                   const ScatterPotential u12(u1.grid(), sum);
                   const ScreenPlane screen{uniform_grid<2>({16, 16}, 0.7, {-5.0, -5.0}), 20.0};
                   const double k = 2.3;
                   const IncidentPlaneWave in{{0.3, -0.2, k}, 1.0};
                   const auto a = born_scatter(in, u1, screen, k);
                   const auto b = born_scatter(in, u2, screen, k);
                   const auto ab = born_scatter(in, u12, screen, k);
                   double worst = 0.0;
                   for (std::size_t i = 0; i < ab.size(); ++i) {
                     const Complex inc = in.at(screen.point(i));
                     worst = std::max(worst, std::abs(ab[i] - (inc + (a[i] - inc) + (b[i] - inc))));
                   }
                   return make_check("scattering.born_linearity", worst, "<", 1e-10);
                 }});
  out.push_back({"scattering.slit_symmetry", [](std::uint64_t) {
                   const double L = 2000.0;
                   Grid1D screen;
                   screen.extent = {1025};
                   screen.spacing = {2.0 * L / 1024.0};
                   screen.origin = {-L};
                   double worst = 0.0;
                   for (int count : {1, 2}) {
                     const auto p = double_slit_intensity({count, 0.7, 4.0, L}, 2.0 * std::numbers::pi, screen);
                     for (std::size_t i = 0; i < p.intensity.size(); ++i) {
                       worst = std::max(worst, std::abs(p.intensity[i] - p.intensity[p.intensity.size() - 1 - i]));
                     }
                   }
                   return make_check("scattering.slit_symmetry", worst, "<", 1e-10);
                 }});
  out.push_back({"scattering.kernel_rings", [](std::uint64_t) {
                   double worst = 0.0;
                   for (std::size_t window : {3, 5, 7, 9}) {
                     const std::size_t n = window + 2;
                     const double o = -static_cast<double>(n / 2) * 0.8;
                     const auto grid = uniform_grid<3>({n, n, n}, 0.8, {o, o, o});
                     const auto u = ScatterPotential::sample(grid, [](const std::array<double, 3>& p) {
                       const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
                       return std::cos(r) * std::exp(-0.3 * r);
                     });
                     const auto kern = scatter_kernel(u, 1.7, window);
                     const long h = static_cast<long>(window / 2);
                     for (long y1 = -h; y1 <= h; ++y1)
                       for (long x1 = -h; x1 <= h; ++x1)
                         for (long y2 = -h; y2 <= h; ++y2)
                           for (long x2 = -h; x2 <= h; ++x2) {
                             if (x1 * x1 + y1 * y1 != x2 * x2 + y2 * y2) continue;
                             worst = std::max(worst, std::abs(kern.at(x1, y1) - kern.at(x2, y2)));
                           }
                   }
                   return make_check("scattering.kernel_rings", worst, "<", 1e-10);
                 }});
  out.push_back({"scattering.response_phase_invariance", [](std::uint64_t seed) {
                   Rng rng(seed, 202);
                   double worst = 0.0;
                   for (int t = 0; t < 200; ++t) {
                     ScatterKernel kern{3, std::vector<Complex>(9), 1.0, {}};
                     std::vector<Complex> patch(9);
                     for (auto& x : kern.values) x = {rng.normal(), rng.normal()};
                     for (auto& x : patch) x = {rng.normal(), rng.normal()};
                     const auto g = uniform_grid<2>({3, 3}, 1.0);
                     const Complex rot = std::polar(1.0, rng.uniform(0, 2 * std::numbers::pi));
                     std::vector<Complex> turned(patch);
                     for (auto& x : turned) x *= rot;
                     const double s0 = neuron_response(kern, WaveField<2>(g, patch)).intensity;
                     const double s1 = neuron_response(kern, WaveField<2>(g, turned)).intensity;
                     worst = std::max(worst, std::abs(s1 - s0));
                   }
                   return make_check("scattering.response_phase_invariance", worst, "<", 1e-10);
                 }});
  out.push_back({"scattering.response_oracle", [](std::uint64_t seed) {
                   Rng rng(seed, 203);
                   double worst = 0.0;
                   for (int t = 0; t < 200; ++t) {
                     ScatterKernel kern{3, std::vector<Complex>(9), 1.0, {rng.normal(), rng.normal()}};
                     std::vector<Complex> patch(9);
                     for (auto& x : kern.values) x = {rng.normal(), rng.normal()};
                     for (auto& x : patch) x = {rng.normal(), rng.normal()};
                     const double s = neuron_response(kern, WaveField<2>(uniform_grid<2>({3, 3}, 1.0), patch)).amplitude;
                     worst = std::max(worst, std::abs(s - oracle::inner_product_modulus(kern.values, patch, kern.bias)));
                   }
                   return make_check("scattering.response_oracle", worst, "<", 1e-12);
                 }});
  out.push_back({"scattering.two_point_fringes", [](std::uint64_t) {
                   // Two equal point scatterers against the analytic two-source pattern.
                   const auto grid = uniform_grid<3>({1, 2, 1}, 3.0, {0.0, -1.5, 0.0});
                   const ScatterPotential u(grid, {1.0, 1.0});
                   const ScreenPlane screen{uniform_grid<2>({1, 401}, 0.5, {0.0, -100.0}), 50.0};
                   const double k = 2.0 * std::numbers::pi;
                   const auto f = born_scattered(plane_wave(grid, {0.0, 0.0, k}, 1.0), u, screen, k);
                   const std::array<std::array<double, 3>, 2> src{{{0.0, -1.5, 0.0}, {0.0, 1.5, 0.0}}};
                   // Each voxel radiates U dV e^{ikd} / (4 pi d).
                   const double scale = 4.0 * std::numbers::pi / grid.cell_volume();
                   std::vector<double> ref(f.size());
                   std::vector<double> got(f.size());
                   for (std::size_t i = 0; i < f.size(); ++i) {
                     ref[i] = oracle::point_sources_intensity(screen.point(i), src, k);
                     got[i] = std::norm(f[i] * scale);
                   }
                   const double peak = *std::max_element(ref.begin(), ref.end());
                   double worst = 0.0;
                   for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(got[i] - ref[i]) / peak);
                   return make_check("scattering.two_point_fringes", worst, "<", 1e-10);
                 }});
}

}  // namespace scatternet::harness::detail
