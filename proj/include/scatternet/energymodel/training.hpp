#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "scatternet/energymodel/rbm.hpp"
#include "scatternet/rng.hpp"

namespace scatternet::energymodel {

/// Couplings drawn N(0, scale^2), biases zero.
RbmParams random_rbm(std::size_t n_visible, std::size_t n_hidden, double scale, Rng& rng);

struct CdConfig {
  std::size_t k = 1;  // Gibbs sweeps in the negative phase
  std::size_t epochs = 2000;
  /// Minibatch size; 0 means full batch.
  std::size_t batch_size = 0;
  double learning_rate = 0.1;
  double momentum = 0.5;
  std::uint64_t seed = 1;
};

enum class CdMetric {
  kExactKl,              // KL(data || model visible marginal), nats
  kReconstructionError,  // proxy: mean squared error of one-sweep reconstructions
};

struct CdEpoch {
  std::size_t epoch = 0;
  CdMetric metric = CdMetric::kExactKl;
  double value = 0.0;
};

struct CdResult {
  RbmParams params;
  std::vector<CdEpoch> history;
};

/// Contrastive divergence with k sweeps, momentum updates on (W, b, c), one
/// metric per epoch. Exact KL is reported whenever n_v + n_h is enumerable.
CdResult cd_train(std::span<const Bits> data, RbmParams init, const CdConfig& cfg,
                  const std::function<void(const CdEpoch&)>& on_epoch = {});

/// Empirical distribution of the data patterns (index = visible bits).
std::vector<double> data_distribution(std::span<const Bits> data, std::size_t n_visible);

/// KL(p || q) over visible patterns, with 0 log 0 = 0; infinite when q
/// vanishes where p does not.
double kl_to_model(std::span<const double> p_data, std::span<const double> q_model);

std::string cd_history_csv(std::span<const CdEpoch> history);

std::string save_rbm_checkpoint(const RbmParams& p);
RbmParams load_rbm_checkpoint(std::istream& in);

}  // namespace scatternet::energymodel
