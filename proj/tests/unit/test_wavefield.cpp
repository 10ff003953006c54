#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "scatternet/rng.hpp"
#include "scatternet/wavefield.hpp"

using namespace scatternet;

namespace {

WaveField<1> sampled(const Grid1D& g, double (*f)(double, double), double k) {
  std::vector<Complex> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.coord(0, i), k);
  return WaveField<1>(g, std::move(v));
}

double square(double x, double) { return x * x; }
double sine(double x, double k) { return std::sin(k * x); }

}  // namespace

TEST_SUITE("wavefield") {
  TEST_CASE("grid and field invariants") {
    CHECK_THROWS_AS(uniform_grid<1>({0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(uniform_grid<2>({2, 2}, 0.0), std::invalid_argument);
    const auto g = uniform_grid<2>({3, 2}, 0.5, {1.0, -1.0});
    CHECK(g.size() == 6);
    CHECK(g.ravel(g.unravel(5)) == 5);
    CHECK(g.point(4)[0] == 1.5);
    CHECK(g.point(4)[1] == -0.5);
    CHECK_THROWS_AS(WaveField<2>(g, std::vector<Complex>(5)), std::invalid_argument);
    CHECK_THROWS_AS(WaveField<2>(g, std::vector<Complex>(6, Complex(NAN, 0.0))), std::invalid_argument);
  }

  TEST_CASE("plane wave with zero wave vector is constant") {
    const auto f = plane_wave(uniform_grid<2>({5, 4}, 0.3), {0.0, 0.0}, 1.0);
    for (const auto& v : f.values()) CHECK(v == Complex(1.0, 0.0));
  }

  TEST_CASE("plane wave at k = pi, x = 1") {
    const auto f = plane_wave(uniform_grid<1>({2}, 1.0), {std::numbers::pi}, 1.0);
    CHECK(f[1].real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(f[1].imag()) < 1e-15);
  }

  TEST_CASE("plane wave with an 8-sample wavelength repeats every 8 samples") {
    const auto f = plane_wave(uniform_grid<1>({64}, 1.0), {2.0 * std::numbers::pi / 8.0}, 1.0);
    for (std::size_t i = 0; i + 8 < f.size(); ++i) CHECK(std::abs(f[i + 8] - f[i]) < 1e-12);
  }

  TEST_CASE("plane wave modulus is the amplitude") {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
      const double amp = rng.uniform(0.1, 5.0);
      const auto f = plane_wave(uniform_grid<2>({9, 7}, 0.7), {rng.normal(), rng.normal()}, amp);
      for (double m : f.modulus()) CHECK(std::abs(m - amp) < 1e-12);
    }
  }

  TEST_CASE("translation phase identities") {
    CHECK(translation_phase<1>({0.0}, {3.7}) == Complex(1.0, 0.0));
    CHECK(translation_phase<1>({2.2}, {0.0}) == Complex(1.0, 0.0));
    const auto p = translation_phase<1>({std::numbers::pi}, {1.0});
    CHECK(p.real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(p.imag()) < 1e-15);
  }

  TEST_CASE("translation phase is a unit-modulus group") {
    Rng rng(12);
    for (int t = 0; t < 1000; ++t) {
      const WaveVector<3> k{rng.normal(), rng.normal(), rng.normal()};
      const Displacement<3> a{rng.normal(), rng.normal(), rng.normal()};
      const Displacement<3> b{rng.normal(), rng.normal(), rng.normal()};
      const Displacement<3> ab{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
      CHECK(std::abs(translation_phase(k, a) * translation_phase(k, b) - translation_phase(k, ab)) < 1e-12);
      CHECK(std::abs(std::abs(translation_phase(k, a)) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("momentum form agrees with the wave-vector form") {
    const WaveVector<2> k{0.3, -1.1};
    const Displacement<2> a{2.0, 0.5};
    CHECK(translation_phase_momentum<2>(k, a) == translation_phase(k, a));
    PhysConstants units;
    units.hbar = 2.0;
    const std::array<double, 2> p{0.6, -2.2};
    CHECK(std::abs(translation_phase_momentum<2>(p, a, units) - translation_phase(k, a)) < 1e-15);
    units.hbar = 0.0;
    CHECK_THROWS_AS(translation_phase_momentum<2>(p, a, units), std::invalid_argument);
  }

  TEST_CASE("series on x^2 terminates after two terms") {
    const auto g = uniform_grid<1>({1001}, 0.01, {-5.0});
    const auto f = sampled(g, square, 0.0);
    const auto out = translate_series(f, 1.0, 2);
    const std::size_t m = series_margin(2);
    for (std::size_t i = m; i + m < g.size(); ++i) {
      const double x = g.coord(0, i);
      const double ref = (x + 1.0) * (x + 1.0);
      CHECK(std::abs(out[i].real() - ref) <= 1e-6 * std::max(1.0, ref));
    }
  }

  TEST_CASE("series with a = 0 is the identity") {
    const auto g = uniform_grid<1>({50}, 0.1);
    const auto f = sampled(g, sine, 0.5);
    const auto out = translate_series(f, 0.0, 5);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(out[i] == f[i]);
  }

  TEST_CASE("series on a sine matches the shifted sine") {
    const double k = 0.5;
    const auto g = uniform_grid<1>({400}, 0.1);
    const auto out = translate_series(sampled(g, sine, k), 0.2, 6);
    const std::size_t m = series_margin(6);
    for (std::size_t i = m; i + m < g.size(); ++i) {
      CHECK(std::abs(out[i].real() - std::sin(k * (g.coord(0, i) + 0.2))) < 1e-4);
    }
  }

  TEST_CASE("series error falls with the number of terms") {
    const double k = 0.45;
    const auto g = uniform_grid<1>({300}, 1.0);
    const auto f = sampled(g, sine, k);
    const std::size_t m = series_margin(8);
    double previous = INFINITY;
    for (int n = 1; n <= 8; ++n) {
      const auto out = translate_series(f, 1.0, n);
      double worst = 0.0;
      for (std::size_t i = m; i + m < g.size(); ++i) {
        worst = std::max(worst, std::abs(out[i].real() - std::sin(k * (g.coord(0, i) + 1.0))));
      }
      CHECK(worst <= previous);
      previous = worst;
    }
  }

  TEST_CASE("series rejects bad term counts") {
    const auto f = sampled(uniform_grid<1>({100}, 0.1), sine, 1.0);
    CHECK_THROWS_AS(translate_series(f, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(translate_series(f, 0.1, 9), std::invalid_argument);
    SeriesOptions opts;
    opts.max_order = 3;
    CHECK_THROWS_AS(translate_series(f, 0.1, 4, opts), std::invalid_argument);
  }

  TEST_CASE("exact shift") {
    const auto g = uniform_grid<1>({10}, 1.0);
    std::vector<Complex> v(10);
    v[3] = 1.0;
    const WaveField<1> impulse(g, v);
    const auto moved = shift_exact(impulse, 2);
    for (std::size_t i = 0; i < 10; ++i) CHECK(moved[i] == Complex(i == 5 ? 1.0 : 0.0, 0.0));
    const auto same = shift_exact(impulse, 0);
    for (std::size_t i = 0; i < 10; ++i) CHECK(same[i] == impulse[i]);
    CHECK_THROWS_AS(shift_exact(impulse, 10), std::invalid_argument);
    CHECK_THROWS_AS(shift_exact(impulse, -10), std::invalid_argument);
  }

  TEST_CASE("shift and shift back restores the interior") {
    Rng rng(13);
    std::vector<Complex> v(40);
    for (auto& x : v) x = {rng.normal(), rng.normal()};
    const WaveField<1> f(uniform_grid<1>({40}, 1.0), v);
    const auto back = shift_exact(shift_exact(f, 3), -3);
    for (std::size_t i = 0; i + 3 < 40; ++i) CHECK(back[i] == f[i]);
    for (std::size_t i = 37; i < 40; ++i) CHECK(back[i] == Complex{});
  }

  TEST_CASE("field serialisation") {
    const WaveField<1> f(uniform_grid<1>({2}, 1.0), {Complex(1.0, -0.5), Complex(0.25, 2.0)});
    CHECK(field_csv(f) == "index,re,im\n0,1,-0.5\n1,0.25,2\n");
    const auto pgm = modulus_pgm(plane_wave(uniform_grid<2>({3, 2}, 1.0), {0.0, 0.0}, 2.0));
    CHECK(pgm.rfind("P5\n3 2\n65535\n", 0) == 0);
  }
}
