#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "scatternet/oracles.hpp"
#include "scatternet/rng.hpp"
#include "scatternet/scattering.hpp"

using namespace scatternet;

namespace {

constexpr double kPi = std::numbers::pi;

// Largest sample within `radius` samples of the screen position y.
std::size_t local_max_near(const IntensityProfile& p, double y, std::size_t radius) {
  const auto it = std::lower_bound(p.position.begin(), p.position.end(), y);
  const auto centre = static_cast<std::size_t>(it - p.position.begin());
  const std::size_t lo = centre > radius ? centre - radius : 0;
  const std::size_t hi = std::min(p.position.size() - 1, centre + radius);
  std::size_t best = lo;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (p.intensity[i] > p.intensity[best]) best = i;
  }
  return best;
}

std::size_t local_min_near(const IntensityProfile& p, double y, std::size_t radius) {
  const auto it = std::lower_bound(p.position.begin(), p.position.end(), y);
  const auto centre = static_cast<std::size_t>(it - p.position.begin());
  std::size_t best = centre - radius;
  for (std::size_t i = centre - radius; i <= centre + radius; ++i) {
    if (p.intensity[i] < p.intensity[best]) best = i;
  }
  return best;
}

}  // namespace

TEST_SUITE("scattering") {
  TEST_CASE("green function closed-form values") {
    const Point3 o{0.0, 0.0, 0.0};
    CHECK(green_outgoing({1.0, 0.0, 0.0}, o, 0.0) == Complex(-1.0 / (4.0 * kPi), 0.0));
    CHECK(green_outgoing({0.0, 2.0, 0.0}, o, 0.0) == Complex(-1.0 / (8.0 * kPi), 0.0));
    const auto g = green_outgoing({0.0, 0.0, 1.0}, o, kPi);
    CHECK(g.real() == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-15));
    CHECK(std::abs(g.imag()) < 1e-17);
    CHECK_THROWS_AS(green_outgoing(o, o, 1.0), std::domain_error);
  }

  TEST_CASE("green function reciprocity is exact") {
    Rng rng(21);
    for (int t = 0; t < 1000; ++t) {
      const Point3 a{rng.normal(), rng.normal(), rng.normal()};
      const Point3 b{rng.normal(), rng.normal(), rng.normal()};
      const double k = rng.uniform(0.0, 10.0);
      CHECK(green_outgoing(a, b, k) == green_outgoing(b, a, k));
    }
  }

  TEST_CASE("potential support") {
    const auto g = uniform_grid<3>({4, 4, 4}, 0.5);
    CHECK(ScatterPotential(g).support().empty);
    std::vector<double> u(g.size(), 0.0);
    u[g.ravel({1, 2, 3})] = 2.0;
    const auto s = ScatterPotential(g, u).support();
    CHECK_FALSE(s.empty);
    CHECK(s.lo == Point3{0.5, 1.0, 1.5});
    CHECK(s.hi == Point3{0.5, 1.0, 1.5});
    CHECK_THROWS_AS(ScatterPotential(g, std::vector<double>(3)), std::invalid_argument);
  }

  TEST_CASE("born scattering without a potential returns the incident wave") {
    const auto g = uniform_grid<3>({3, 3, 3}, 1.0);
    const IncidentPlaneWave in{{0.3, 0.0, 2.0}, 1.5};
    const ScreenPlane screen{uniform_grid<2>({5, 5}, 1.0, {-2.0, -2.0}), 20.0};
    const auto out = born_scatter(in, ScatterPotential(g), screen, 2.0);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == in.at(screen.point(i)));
  }

  TEST_CASE("single voxel scatterer matches the one-term closed form") {
    const auto g = uniform_grid<3>({3, 3, 3}, 1.0);
    std::vector<double> u(g.size(), 0.0);
    const std::size_t v = g.ravel({1, 2, 0});
    u[v] = 0.7;
    const double k = 2.0;
    const ScreenPlane screen{uniform_grid<2>({7, 3}, 0.8, {-2.0, -1.0}), 10.0};
    const auto out = born_scatter({{0.0, 0.0, 0.0}, 1.0}, ScatterPotential(g, u), screen, k);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Complex ref = 1.0 - green_outgoing(screen.point(i), g.point(v), k) * 0.7;
      CHECK(std::abs(out[i] - ref) < 1e-15);
    }
  }

  TEST_CASE("two point scatterers reproduce two-source interference") {
    // Voxels at y = -4 and y = 4 (eight wavelengths apart), unit cell volume.
    const auto grid = uniform_grid<3>({1, 9, 1}, 1.0, {0.0, -4.0, 0.0});
    std::vector<double> values(9, 0.0);
    values.front() = values.back() = 1.0;
    const ScatterPotential u(grid, values);
    const ScreenPlane screen{uniform_grid<2>({1, 3001}, 0.01, {0.0, -15.0}), 30.0};
    const double k = 2.0 * kPi;
    const auto f = born_scattered(plane_wave(grid, {0.0, 0.0, k}, 1.0), u, screen, k);
    const std::array<std::array<double, 3>, 2> src{{{0.0, -4.0, 0.0}, {0.0, 4.0, 0.0}}};
    std::vector<double> ref(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) ref[i] = oracle::point_sources_intensity(screen.point(i), src, k);
    const double peak = *std::max_element(ref.begin(), ref.end());
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(std::abs(std::norm(f[i]) * 16.0 * kPi * kPi - ref[i]) < 1e-10 * peak);
    }
    // Maxima where the path difference is a whole number of wavelengths.
    std::size_t maxima = 0;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
      if (std::norm(f[i]) > std::norm(f[i - 1]) && std::norm(f[i]) > std::norm(f[i + 1])) {
        const auto r = screen.point(i);
        const double d1 = std::hypot(r[1] + 4.0, r[2]);
        const double d2 = std::hypot(r[1] - 4.0, r[2]);
        const double n = (d1 - d2) / (2.0 * kPi / k);
        CHECK(std::abs(n - std::round(n)) < 0.01);
        ++maxima;
      }
    }
    CHECK(maxima == 7);
  }

  TEST_CASE("born scattering is linear in the potential") {
    Rng rng(22);
    const auto g = uniform_grid<3>({4, 4, 3}, 0.5);
    std::vector<double> u1(g.size());
    std::vector<double> u2(g.size());
    std::vector<double> u12(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      u1[i] = rng.normal();
      u2[i] = rng.normal();
      u12[i] = u1[i] + u2[i];
    }
    const IncidentPlaneWave in{{0.1, 0.2, 3.0}, 1.0};
    const ScreenPlane screen{uniform_grid<2>({6, 6}, 1.0, {-3.0, -3.0}), 15.0};
    const auto a = born_scatter(in, ScatterPotential(g, u1), screen, 3.0);
    const auto b = born_scatter(in, ScatterPotential(g, u2), screen, 3.0);
    const auto ab = born_scatter(in, ScatterPotential(g, u12), screen, 3.0);
    for (std::size_t i = 0; i < ab.size(); ++i) {
      const Complex inc = in.at(screen.point(i));
      CHECK(std::abs(ab[i] - (inc + (a[i] - inc) + (b[i] - inc))) < 1e-10);
    }
  }

  TEST_CASE("born scattering is independent of the worker count") {
    Rng rng(23);
    const auto g = uniform_grid<3>({5, 5, 5}, 0.4);
    std::vector<double> u(g.size());
    for (auto& x : u) x = rng.normal();
    const ScreenPlane screen{uniform_grid<2>({9, 9}, 0.5, {-2.0, -2.0}), 8.0};
    const auto one = born_scatter({{0.0, 0.0, 2.0}, 1.0}, ScatterPotential(g, u), screen, 2.0, {1});
    const auto four = born_scatter({{0.0, 0.0, 2.0}, 1.0}, ScatterPotential(g, u), screen, 2.0, {4});
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i] == four[i]);
  }

  TEST_CASE("screen inside the potential support is rejected") {
    const auto g = uniform_grid<3>({3, 3, 3}, 1.0);
    std::vector<double> u(g.size(), 1.0);
    const ScreenPlane screen{uniform_grid<2>({3, 3}, 1.0), 1.0};
    CHECK_THROWS_AS(born_scatter({{0.0, 0.0, 1.0}, 1.0}, ScatterPotential(g, u), screen, 1.0), std::domain_error);
    const auto other = uniform_grid<3>({2, 2, 2}, 1.0);
    CHECK_THROWS_AS(born_scattered(plane_wave(other, {0.0, 0.0, 1.0}, 1.0), ScatterPotential(g, u), screen, 1.0),
                    std::invalid_argument);
  }

  TEST_CASE("single slit: central maximum and first zeros") {
    const double lambda = 1.0;
    const double k = 2.0 * kPi / lambda;
    const SlitAperture slit{1, 4.0, 10.0, 1e4};
    const auto screen = uniform_grid<1>({4096}, 2e4 / 4095.0, {-1e4});
    const auto p = double_slit_intensity(slit, k, screen);
    const auto peak = std::max_element(p.intensity.begin(), p.intensity.end()) - p.intensity.begin();
    CHECK(std::abs(p.position[static_cast<std::size_t>(peak)]) <= screen.spacing[0]);
    for (double s : oracle::single_slit_zero_sines(lambda, 4.0, 1)) {
      const double y = oracle::screen_positions(std::vector<double>{s}, 1e4)[0];
      const std::size_t i = local_min_near(p, y, 4);
      CHECK(std::abs(p.position[i] - y) <= screen.spacing[0]);
      CHECK(p.intensity[i] < 1e-3);
    }
  }

  TEST_CASE("double slit maxima at n lambda / d") {
    const double k = 2.0 * kPi;
    const SlitAperture slits{2, 0.2, 10.0, 1e4};
    const auto screen = uniform_grid<1>({4096}, 2e4 / 4095.0, {-1e4});
    const auto p = double_slit_intensity(slits, k, screen);
    CHECK(p.warnings.empty());
    for (double y : oracle::screen_positions(oracle::double_slit_maxima_sines(1.0, 10.0, 2), 1e4)) {
      const std::size_t i = local_max_near(p, y, 50);
      CHECK(std::abs(p.position[i] - y) <= screen.spacing[0]);
    }
    CHECK(*std::max_element(p.intensity.begin(), p.intensity.end()) == 1.0);
  }

  TEST_CASE("symmetric apertures give symmetric profiles") {
    const auto screen = uniform_grid<1>({1001}, 2.0, {-1000.0});
    for (int count : {1, 2, 3}) {
      const auto p = double_slit_intensity({count, 0.6, 3.0, 2000.0}, 2.0 * kPi, screen);
      for (std::size_t i = 0; i < p.intensity.size(); ++i) {
        CHECK(std::abs(p.intensity[i] - p.intensity[p.intensity.size() - 1 - i]) < 1e-10);
      }
    }
  }

  TEST_CASE("merged slits reproduce the single slit of the merged width") {
    const auto screen = uniform_grid<1>({1001}, 10.0, {-5000.0});
    const double k = 2.0 * kPi;
    const auto merged = double_slit_intensity({2, 1.0, 1.0 + 1e-9, 1e4}, k, screen);
    const auto single = double_slit_intensity({1, 2.0 + 1e-9, 10.0, 1e4}, k, screen);
    for (std::size_t i = 0; i < screen.size(); ++i) CHECK(std::abs(merged.intensity[i] - single.intensity[i]) < 1e-3);
  }

  TEST_CASE("slit preconditions") {
    const auto screen = uniform_grid<1>({101}, 1.0, {-50.0});
    CHECK_THROWS_AS(double_slit_intensity({2, 1.0, 10.0, 100.0}, 0.0, screen), std::invalid_argument);
    CHECK_THROWS_AS(double_slit_intensity({2, 1.0, 0.5, 100.0}, 1.0, screen), std::invalid_argument);
    CHECK_THROWS_AS(double_slit_intensity({2, 0.0, 10.0, 100.0}, 1.0, screen), std::invalid_argument);
    CHECK_THROWS_AS(double_slit_intensity({2, 1.0, 10.0, -1.0}, 1.0, screen), std::invalid_argument);
    // lambda = 200 exceeds the 100-unit screen.
    CHECK_THROWS_AS(double_slit_intensity({2, 1.0, 10.0, 100.0}, 2.0 * kPi / 200.0, screen), std::invalid_argument);
    const auto near = double_slit_intensity({2, 1.0, 10.0, 20.0}, 2.0 * kPi, screen);
    CHECK(near.warnings.size() == 1);
  }

  TEST_CASE("scatter kernel of an empty potential is zero") {
    const auto kern = scatter_kernel(ScatterPotential(uniform_grid<3>({5, 5, 5}, 1.0)), 1.0, 5);
    for (const auto& v : kern.values) CHECK(v == Complex{});
  }

  TEST_CASE("scatter kernel of a single voxel") {
    const auto g = uniform_grid<3>({7, 7, 7}, 1.0);
    std::vector<double> u(g.size(), 0.0);
    u[g.ravel({4, 2, 5})] = 1.3;
    const double k = 0.8;
    const auto kern = scatter_kernel(ScatterPotential(g, u), k, 5);
    for (long dy = -2; dy <= 2; ++dy) {
      for (long dx = -2; dx <= 2; ++dx) {
        const Complex expect = dx == 1 && dy == -1 ? green_outgoing({0, 0, 0}, {1.0, -1.0, 2.0}, k) * 1.3 : Complex{};
        CHECK(kern.at(dx, dy) == expect);
      }
    }
    CHECK_THROWS_AS(kern.at(3, 0), std::out_of_range);
  }

  TEST_CASE("spherically symmetric potentials give ring-constant kernels") {
    for (std::size_t window : {3, 5, 7, 9}) {
      const std::size_t n = window + 4;
      const double c = static_cast<double>(n / 2);
      const auto pot = ScatterPotential::sample(uniform_grid<3>({n, n, n}, 1.0), [c](const Point3& p) {
        const double r2 = (p[0] - c) * (p[0] - c) + (p[1] - c) * (p[1] - c) + (p[2] - c) * (p[2] - c);
        return std::exp(-r2 / 4.5);
      });
      const auto kern = scatter_kernel(pot, 1.2, window);
      const long h = static_cast<long>(window / 2);
      for (long y1 = -h; y1 <= h; ++y1)
        for (long x1 = -h; x1 <= h; ++x1)
          for (long y2 = -h; y2 <= h; ++y2)
            for (long x2 = -h; x2 <= h; ++x2) {
              if (x1 * x1 + y1 * y1 != x2 * x2 + y2 * y2) continue;
              CHECK(std::abs(kern.at(x1, y1) - kern.at(x2, y2)) < 1e-10);
            }
    }
  }

  TEST_CASE("scatter kernel window restrictions") {
    const ScatterPotential pot(uniform_grid<3>({9, 9, 3}, 1.0));
    CHECK_THROWS_AS(scatter_kernel(pot, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(scatter_kernel(pot, 1.0, 11), std::invalid_argument);
    CHECK_THROWS_AS(scatter_kernel(ScatterPotential(uniform_grid<3>({5, 5, 5}, 1.0)), 1.0, 7), std::invalid_argument);
  }

  TEST_CASE("neuron response examples") {
    ScatterKernel zero{3, std::vector<Complex>(9), 1.0, {}};
    const auto patch_grid = uniform_grid<2>({3, 3}, 1.0);
    const auto r0 = neuron_response(zero, plane_wave(patch_grid, {0.3, 0.1}, 2.0));
    CHECK(r0.amplitude == 0.0);
    CHECK(r0.intensity == 0.0);

    ScatterKernel centre{3, std::vector<Complex>(9), 1.0, {}};
    centre.values[4] = 1.0;
    std::vector<Complex> v(9);
    v[4] = {3.0, 4.0};
    const auto r = neuron_response(centre, WaveField<2>(patch_grid, v));
    CHECK(r.amplitude == 5.0);
    CHECK(r.intensity == 25.0);
    CHECK_THROWS_AS(neuron_response(centre, plane_wave(uniform_grid<2>({5, 5}, 1.0), {0.0, 0.0}, 1.0)),
                    std::invalid_argument);
  }

  TEST_CASE("neuron response against direct summation and under phase rotation") {
    Rng rng(24);
    for (int t = 0; t < 200; ++t) {
      ScatterKernel kern{3, std::vector<Complex>(9), 1.0, {rng.normal(), rng.normal()}};
      std::vector<Complex> patch(9);
      for (auto& x : kern.values) x = {rng.normal(), rng.normal()};
      for (auto& x : patch) x = {rng.normal(), rng.normal()};
      const auto grid = uniform_grid<2>({3, 3}, 1.0);
      const auto r = neuron_response(kern, WaveField<2>(grid, patch));
      CHECK(std::abs(r.amplitude - oracle::inner_product_modulus(kern.values, patch, kern.bias)) < 1e-12);
      CHECK(r.intensity >= 0.0);

      kern.bias = {};
      const Complex phase = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
      std::vector<Complex> rotated(patch);
      for (auto& x : rotated) x *= phase;
      const double s1 = neuron_response(kern, WaveField<2>(grid, patch)).intensity;
      const double s2 = neuron_response(kern, WaveField<2>(grid, rotated)).intensity;
      CHECK(std::abs(s1 - s2) < 1e-10);
    }
  }

  TEST_CASE("kernel exports") {
    ScatterKernel kern{3, std::vector<Complex>(9), 1.0, {}};
    kern.values[0] = {1.0, -2.0};
    const auto csv = kernel_csv(kern);
    CHECK(csv.rfind("x,y,re,im\n-1,-1,1,-2\n", 0) == 0);
    CHECK(kernel_modulus_pgm(kern).rfind("P5\n3 3\n65535\n", 0) == 0);
  }

  TEST_CASE("box convolution of a sine") {
    for (double x : {-1.0, 0.0, 0.3, 2.9}) CHECK(std::abs(box_conv_sine(2.0, kPi, x)) < 1e-15);
    // kr = pi: amplitude 2/k, reached at x = 0.
    CHECK(box_conv_sine(1.0, kPi, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(box_conv_intensity(1.0, kPi) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(box_conv_intensity(2.0, kPi) < 1e-30);
    const double quad = oracle::simpson([](double a) { return std::sin(0.7 * (0.4 + a)); }, 0.0, 1.3, 10000);
    CHECK(std::abs(box_conv_sine(0.7, 1.3, 0.4) - quad) < 1e-8 * std::abs(quad));
    CHECK_THROWS_AS(box_conv_sine(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(box_conv_sine(1.0, -1.0, 0.0), std::invalid_argument);
  }
}
