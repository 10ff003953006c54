#include <cmath>
#include <stdexcept>

#include "scatternet/scattering.hpp"

namespace scatternet {

namespace {
void check_window(double k, double r) {
  if (!(k > 0.0)) throw std::invalid_argument("box_conv: k must be positive");
  if (!(r > 0.0)) throw std::invalid_argument("box_conv: window length must be positive");
}
}  // namespace

double box_conv_sine(double k, double r, double x) {
  check_window(k, r);
  return (2.0 / k) * std::sin(0.5 * k * r) * std::sin(k * x + 0.5 * k * r);
}

double box_conv_intensity(double k, double r) {
  check_window(k, r);
  const double s = std::sin(0.5 * k * r);
  return 4.0 / (k * k) * s * s;
}

}  // namespace scatternet
