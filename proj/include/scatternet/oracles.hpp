#pragma once

// Independent reference computations used by the tests and the verify suite.
// Nothing here calls into the implementation library: inputs are raw arrays
// with explicit dimensions, and each routine takes the most direct route to
// its answer (brute force, enumeration, quadrature, power iteration).

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace scatternet::oracle {

/// Composite Simpson rule with an even number of panels.
double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels);

/// Valid cross-correlation by direct summation. Layouts: input[c][y][x],
/// kernels[o][c][ky][kx], output[o][y][x].
std::vector<double> conv2d(std::span<const double> input, std::size_t channels, std::size_t height, std::size_t width,
                           std::span<const double> kernels, std::span<const double> bias, std::size_t out_channels,
                           std::size_t kh, std::size_t kw, std::size_t stride);

/// Window maxima by scanning every window element.
std::vector<double> max_pool(std::span<const double> input, std::size_t channels, std::size_t height,
                             std::size_t width, std::size_t window, std::size_t stride);

/// RBM partition function with the hidden layer summed out analytically:
/// sum_v exp(beta b.v) prod_j (1 + exp(beta (c_j + sum_i v_i W_ij))),
/// visible patterns visited from the highest index down. W is [i][j].
double rbm_partition_marginal(std::span<const double> b, std::span<const double> c, std::span<const double> w,
                              double beta);

/// Joint RBM probabilities by plain enumeration, visiting hidden patterns in
/// the outer loop. Index layout: visible bit i at i, hidden bit j at n_v + j.
std::vector<double> rbm_joint_distribution(std::span<const double> b, std::span<const double> c,
                                           std::span<const double> w, double beta);

/// Left eigenvector of a row-stochastic n x n matrix for eigenvalue 1.
std::vector<double> stationary_distribution(std::span<const double> t, std::size_t n, std::size_t iterations = 100000,
                                            double tolerance = 1e-15);

/// |sum_s exp(ik r_s) / r_s|^2 over point sources.
double point_sources_intensity(const std::array<double, 3>& r, std::span<const std::array<double, 3>> sources,
                               double k);

/// Screen coordinates y = L tan(asin(s)) of the far-field directions sin(theta) = s.
std::vector<double> screen_positions(std::span<const double> sines, double distance);

/// Double-slit maxima: sin(theta) = n lambda / d for n in [-order, order].
std::vector<double> double_slit_maxima_sines(double wavelength, double separation, int order);

/// Single-slit zeros: sin(theta) = n lambda / w for 1 <= |n| <= order.
std::vector<double> single_slit_zero_sines(double wavelength, double width, int order);

/// Central difference (f(x + h) - f(x - h)) / (2h).
double central_difference(const std::function<double(double)>& f, double x, double h);

/// |sum K psi + b| for equally long arrays.
double inner_product_modulus(std::span<const std::complex<double>> kernel, std::span<const std::complex<double>> patch,
                             std::complex<double> bias);

}  // namespace scatternet::oracle
