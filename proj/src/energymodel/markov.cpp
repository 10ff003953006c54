#include "scatternet/energymodel/markov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "scatternet/rng.hpp"

namespace scatternet::energymodel {

TransitionMatrix::TransitionMatrix(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (n_ == 0) throw std::invalid_argument("TransitionMatrix: no states");
  if (values_.size() != n_ * n_) throw std::invalid_argument("TransitionMatrix: expected n*n entries");
  for (std::size_t i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (double x : row(i)) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument("TransitionMatrix: row " + std::to_string(i) + " has a negative entry");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      throw std::invalid_argument("TransitionMatrix: row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

std::vector<std::size_t> markov_chain_run(const TransitionMatrix& t, std::size_t x0, std::size_t steps,
                                          std::uint64_t seed, std::uint64_t stream) {
  if (x0 >= t.states()) throw std::invalid_argument("markov_chain_run: initial state out of range");
  Rng rng(seed, stream);
  std::vector<std::size_t> traj;
  traj.reserve(steps + 1);
  traj.push_back(x0);
  std::size_t x = x0;
  for (std::size_t s = 0; s < steps; ++s) {
    const auto r = t.row(x);
    const double u = rng.uniform();
    double cum = 0.0;
    std::size_t next = 0;
    // Falls through to the last state with positive mass when rounding leaves
    // the cumulative sum just below u.
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] <= 0.0) continue;
      next = j;
      cum += r[j];
      if (u < cum) break;
    }
    x = next;
    traj.push_back(x);
  }
  return traj;
}

std::vector<double> occupancy(std::span<const std::size_t> trajectory, std::size_t states) {
  std::vector<double> occ(states, 0.0);
  if (trajectory.empty()) return occ;
  for (std::size_t x : trajectory) {
    if (x >= states) throw std::invalid_argument("occupancy: state out of range");
    occ[x] += 1.0;
  }
  for (double& o : occ) o /= static_cast<double>(trajectory.size());
  return occ;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return 0.5 * d;
}

}  // namespace scatternet::energymodel
