#include "scatternet/wavefield.hpp"

#include <algorithm>

#include "scatternet/numerics.hpp"

namespace scatternet {

int stencil_half_width(int derivative_order) {
  // Narrowest central stencil for the order, widened by five points per side
  // (at least tenth-order accurate).
  return (derivative_order + 1) / 2 + 5;
}

std::size_t series_margin(int n_terms) {
  return n_terms < 1 ? 0 : static_cast<std::size_t>(stencil_half_width(n_terms));
}

WaveField<1> translate_series(const WaveField<1>& f, double a, int n_terms, const SeriesOptions& opts) {
  if (n_terms < 1) throw std::invalid_argument("translate_series: n_terms must be >= 1");
  if (n_terms > opts.max_order) {
    throw std::invalid_argument("translate_series: n_terms " + std::to_string(n_terms) +
                                " exceeds derivative-order cap " + std::to_string(opts.max_order));
  }
  if (a == 0.0) return f;

  const std::size_t n = f.size();
  const double h = f.grid().spacing[0];
  std::vector<Complex> out(f.values().begin(), f.values().end());

  double coeff = 1.0;  // a^order / order!
  for (int order = 1; order <= n_terms; ++order) {
    coeff *= a / order;
    const int p = stencil_half_width(order);
    const std::vector<double> w = central_difference_weights(order, p);
    const double scale = coeff / std::pow(h, order);
    const auto pw = static_cast<std::size_t>(p);
    if (n <= 2 * pw) break;
    for (std::size_t i = pw; i + pw < n; ++i) {
      Complex d{};
      for (std::size_t j = 0; j < w.size(); ++j) d += w[j] * f[i - pw + j];
      out[i] += scale * d;
    }
  }
  return WaveField<1>(f.grid(), std::move(out));
}

WaveField<1> shift_exact(const WaveField<1>& f, long a) {
  const auto n = static_cast<long>(f.size());
  if (a <= -n || a >= n) throw std::invalid_argument("shift_exact: |a| must be below the sample count");
  std::vector<Complex> out(f.size());
  for (long i = 0; i < n; ++i) {
    const long src = i - a;
    if (src >= 0 && src < n) out[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(src)];
  }
  return WaveField<1>(f.grid(), std::move(out));
}

}  // namespace scatternet
