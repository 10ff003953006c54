#include "scatternet/oracles.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace scatternet::oracle {

double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
  if (panels == 0 || panels % 2 != 0) throw std::invalid_argument("simpson: panel count must be even");
  const double h = (b - a) / static_cast<double>(panels);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < panels; ++i) {
    const double x = a + h * static_cast<double>(i);
    (i % 2 ? odd : even) += f(x);
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

std::vector<double> conv2d(std::span<const double> input, std::size_t channels, std::size_t height, std::size_t width,
                           std::span<const double> kernels, std::span<const double> bias, std::size_t out_channels,
                           std::size_t kh, std::size_t kw, std::size_t stride) {
  const std::size_t oh = (height - kh) / stride + 1;
  const std::size_t ow = (width - kw) / stride + 1;
  std::vector<double> out(out_channels * oh * ow);
  for (std::size_t o = 0; o < out_channels; ++o) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        double s = bias[o];
        for (std::size_t c = 0; c < channels; ++c) {
          for (std::size_t ky = 0; ky < kh; ++ky) {
            for (std::size_t kx = 0; kx < kw; ++kx) {
              const double in = input[(c * height + y * stride + ky) * width + x * stride + kx];
              s += kernels[((o * channels + c) * kh + ky) * kw + kx] * in;
            }
          }
        }
        out[(o * oh + y) * ow + x] = s;
      }
    }
  }
  return out;
}

std::vector<double> max_pool(std::span<const double> input, std::size_t channels, std::size_t height,
                             std::size_t width, std::size_t window, std::size_t stride) {
  const std::size_t oh = (height - window) / stride + 1;
  const std::size_t ow = (width - window) / stride + 1;
  std::vector<double> out;
  out.reserve(channels * oh * ow);
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        std::vector<double> win;
        for (std::size_t dy = 0; dy < window; ++dy) {
          for (std::size_t dx = 0; dx < window; ++dx) {
            win.push_back(input[(c * height + y * stride + dy) * width + x * stride + dx]);
          }
        }
        double m = win[0];
        for (double v : win) m = v > m ? v : m;
        out.push_back(m);
      }
    }
  }
  return out;
}

double rbm_partition_marginal(std::span<const double> b, std::span<const double> c, std::span<const double> w,
                              double beta) {
  const std::size_t nv = b.size();
  const std::size_t nh = c.size();
  double z = 0.0;
  for (std::size_t v = std::size_t{1} << nv; v-- > 0;) {
    double field = 0.0;
    for (std::size_t i = 0; i < nv; ++i) {
      if ((v >> i) & 1u) field += b[i];
    }
    double term = std::exp(beta * field);
    for (std::size_t j = 0; j < nh; ++j) {
      double x = c[j];
      for (std::size_t i = 0; i < nv; ++i) {
        if ((v >> i) & 1u) x += w[i * nh + j];
      }
      term *= 1.0 + std::exp(beta * x);
    }
    z += term;
  }
  return z;
}

std::vector<double> rbm_joint_distribution(std::span<const double> b, std::span<const double> c,
                                           std::span<const double> w, double beta) {
  const std::size_t nv = b.size();
  const std::size_t nh = c.size();
  std::vector<double> p(std::size_t{1} << (nv + nh));
  double z = 0.0;
  for (std::size_t h = 0; h < (std::size_t{1} << nh); ++h) {
    for (std::size_t v = 0; v < (std::size_t{1} << nv); ++v) {
      double e = 0.0;
      for (std::size_t i = 0; i < nv; ++i) e -= ((v >> i) & 1u) * b[i];
      for (std::size_t j = 0; j < nh; ++j) e -= ((h >> j) & 1u) * c[j];
      for (std::size_t i = 0; i < nv; ++i) {
        for (std::size_t j = 0; j < nh; ++j) e -= ((v >> i) & (h >> j) & 1u) * w[i * nh + j];
      }
      const double x = std::exp(-beta * e);
      p[v | (h << nv)] = x;
      z += x;
    }
  }
  for (double& x : p) x /= z;
  return p;
}

std::vector<double> stationary_distribution(std::span<const double> t, std::size_t n, std::size_t iterations,
                                            double tolerance) {
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t it = 0; it < iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next[j] += pi[i] * t[i * n + j];
    }
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(next[j] - pi[j]));
    pi.swap(next);
    if (diff < tolerance) break;
  }
  return pi;
}

double point_sources_intensity(const std::array<double, 3>& r, std::span<const std::array<double, 3>> sources,
                               double k) {
  std::complex<double> sum;
  for (const auto& s : sources) {
    const double d = std::hypot(r[0] - s[0], r[1] - s[1], r[2] - s[2]);
    sum += std::polar(1.0 / d, k * d);
  }
  return std::norm(sum);
}

std::vector<double> screen_positions(std::span<const double> sines, double distance) {
  std::vector<double> y;
  for (double s : sines) y.push_back(distance * std::tan(std::asin(s)));
  return y;
}

std::vector<double> double_slit_maxima_sines(double wavelength, double separation, int order) {
  std::vector<double> s;
  for (int n = -order; n <= order; ++n) s.push_back(n * wavelength / separation);
  return s;
}

std::vector<double> single_slit_zero_sines(double wavelength, double width, int order) {
  std::vector<double> s;
  for (int n = -order; n <= order; ++n) {
    if (n != 0) s.push_back(n * wavelength / width);
  }
  return s;
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double inner_product_modulus(std::span<const std::complex<double>> kernel, std::span<const std::complex<double>> patch,
                             std::complex<double> bias) {
  if (kernel.size() != patch.size()) throw std::invalid_argument("inner_product_modulus: size mismatch");
  double re = bias.real();
  double im = bias.imag();
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    re += kernel[i].real() * patch[i].real() - kernel[i].imag() * patch[i].imag();
    im += kernel[i].real() * patch[i].imag() + kernel[i].imag() * patch[i].real();
  }
  return std::hypot(re, im);
}

}  // namespace scatternet::oracle
