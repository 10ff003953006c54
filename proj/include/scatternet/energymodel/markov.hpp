#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scatternet::energymodel {

/// Row-stochastic matrix over states 0..n-1, row-major. Rows are
/// non-negative and sum to 1 within kRowTolerance.
class TransitionMatrix {
 public:
  static constexpr double kRowTolerance = 1e-12;

  TransitionMatrix(std::size_t n, std::vector<double> values);

  std::size_t states() const { return n_; }
  double operator()(std::size_t from, std::size_t to) const { return values_[from * n_ + to]; }
  std::span<const double> row(std::size_t from) const { return std::span(values_).subspan(from * n_, n_); }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

/// Trajectory x_0 = x0, x_1, ..., x_steps; each step inverts the row's
/// cumulative distribution at one uniform draw. A pure function of the seed.
std::vector<std::size_t> markov_chain_run(const TransitionMatrix& t, std::size_t x0, std::size_t steps,
                                          std::uint64_t seed, std::uint64_t stream = 0);

/// Fraction of time spent in each state, counting every trajectory entry.
std::vector<double> occupancy(std::span<const std::size_t> trajectory, std::size_t states);

/// Total-variation distance 1/2 sum |p - q|.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace scatternet::energymodel
