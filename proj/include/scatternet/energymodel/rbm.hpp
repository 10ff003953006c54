#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scatternet/rng.hpp"

namespace scatternet::energymodel {

/// Restricted Boltzmann machine parameters; coupling is [visible][hidden].
struct RbmParams {
  std::vector<double> visible_bias;  // b
  std::vector<double> hidden_bias;   // c
  std::vector<double> coupling;      // W

  static RbmParams zeros(std::size_t n_visible, std::size_t n_hidden);

  std::size_t n_visible() const { return visible_bias.size(); }
  std::size_t n_hidden() const { return hidden_bias.size(); }
  double w(std::size_t i, std::size_t j) const { return coupling[i * n_hidden() + j]; }
  double& w(std::size_t i, std::size_t j) { return coupling[i * n_hidden() + j]; }

  void validate() const;

  /// The same machine with the roles of the two layers exchanged
  /// (b <-> c, W <-> W^T).
  RbmParams swapped() const;

  friend bool operator==(const RbmParams&, const RbmParams&) = default;
};

using Bits = std::vector<std::uint8_t>;

struct BinaryConfig {
  Bits visible;
  Bits hidden;

  void validate_against(const RbmParams& p) const;
  friend bool operator==(const BinaryConfig&, const BinaryConfig&) = default;
};

/// E = -b.v - c.h - v.W.h. The terms are summed exactly (correctly rounded),
/// so the value depends only on the multiset of active terms.
double energy(const BinaryConfig& cfg, const RbmParams& p);

/// Largest n_visible + n_hidden accepted by the exact enumerators.
inline constexpr std::size_t kEnumerationLimit = 24;

/// Joint configurations are indexed with visible unit i at bit i and hidden
/// unit j at bit n_visible + j.
BinaryConfig config_from_index(std::uint64_t index, std::size_t n_visible, std::size_t n_hidden);
std::uint64_t config_index(const BinaryConfig& cfg);

/// Z = sum over all 2^(n_v + n_h) configurations of exp(-beta E).
double partition_function_exact(const RbmParams& p, double beta);
double log_partition_function(const RbmParams& p, double beta);

double boltzmann_prob(const BinaryConfig& cfg, const RbmParams& p, double beta);

/// Probability of every joint configuration, by config_index.
std::vector<double> boltzmann_distribution(const RbmParams& p, double beta);

/// Exact marginal over visible patterns (index = visible bits).
std::vector<double> visible_marginal(const RbmParams& p, double beta);

struct EnergyMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of E under the Boltzmann distribution at beta.
EnergyMoments energy_moments(const RbmParams& p, double beta);

/// Mean and variance of E over explicit (configuration, weight) pairs.
EnergyMoments energy_moments(std::span<const BinaryConfig> configs, std::span<const double> weights,
                             const RbmParams& p);

/// P(h_j = 1 | v) = sigmoid(beta (c_j + sum_i v_i W_ij)).
std::vector<double> hidden_activation(const Bits& visible, const RbmParams& p, double beta);
/// P(v_i = 1 | h) = sigmoid(beta (b_i + sum_j W_ij h_j)).
std::vector<double> visible_activation(const Bits& hidden, const RbmParams& p, double beta);

/// Markov chain over RBM configurations. Each chain owns its RNG stream.
struct ChainState {
  BinaryConfig config;
  std::uint64_t steps = 0;
  Rng rng{0};
  double beta = 1.0;

  static ChainState start(BinaryConfig init, std::uint64_t seed, std::uint64_t stream = 0, double beta = 1.0);
};

/// One block-Gibbs sweep: h ~ P(h | v), then v ~ P(v | h).
ChainState gibbs_step(ChainState state, const RbmParams& p);

/// Exact sweep kernel on visible patterns,
/// T(v -> v') = sum_h P(h | v) P(v' | h); row-major 2^n_v x 2^n_v.
std::vector<double> visible_sweep_kernel(const RbmParams& p, double beta);

/// Exact sweep kernel on joint states (v, h) -> (v', h'), where h' ~ P(. | v)
/// and v' ~ P(. | h'); row-major 2^n x 2^n.
std::vector<double> joint_sweep_kernel(const RbmParams& p, double beta);

}  // namespace scatternet::energymodel
