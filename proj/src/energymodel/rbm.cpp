#include "scatternet/energymodel/rbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scatternet/neuralnet/layers.hpp"
#include "scatternet/numerics.hpp"

namespace scatternet::energymodel {

RbmParams RbmParams::zeros(std::size_t n_visible, std::size_t n_hidden) {
  RbmParams p{std::vector<double>(n_visible, 0.0), std::vector<double>(n_hidden, 0.0),
              std::vector<double>(n_visible * n_hidden, 0.0)};
  p.validate();
  return p;
}

void RbmParams::validate() const {
  if (visible_bias.empty() || hidden_bias.empty()) throw std::invalid_argument("RbmParams: empty layer");
  if (coupling.size() != n_visible() * n_hidden()) throw std::invalid_argument("RbmParams: coupling shape mismatch");
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(visible_bias) || !finite(hidden_bias) || !finite(coupling)) {
    throw std::invalid_argument("RbmParams: non-finite parameter");
  }
}

RbmParams RbmParams::swapped() const {
  RbmParams s{hidden_bias, visible_bias, std::vector<double>(coupling.size())};
  for (std::size_t i = 0; i < n_visible(); ++i)
    for (std::size_t j = 0; j < n_hidden(); ++j) s.coupling[j * n_visible() + i] = w(i, j);
  return s;
}

void BinaryConfig::validate_against(const RbmParams& p) const {
  if (visible.size() != p.n_visible() || hidden.size() != p.n_hidden()) {
    throw std::invalid_argument("BinaryConfig: size does not match the machine");
  }
  auto bits = [](const Bits& b) { return std::all_of(b.begin(), b.end(), [](std::uint8_t x) { return x <= 1; }); };
  if (!bits(visible) || !bits(hidden)) throw std::invalid_argument("BinaryConfig: units must be 0 or 1");
}

double energy(const BinaryConfig& cfg, const RbmParams& p) {
  cfg.validate_against(p);
  ExactAccumulator acc;
  for (std::size_t i = 0; i < p.n_visible(); ++i) {
    if (cfg.visible[i]) acc.add(-p.visible_bias[i]);
  }
  for (std::size_t j = 0; j < p.n_hidden(); ++j) {
    if (cfg.hidden[j]) acc.add(-p.hidden_bias[j]);
  }
  for (std::size_t i = 0; i < p.n_visible(); ++i) {
    if (!cfg.visible[i]) continue;
    for (std::size_t j = 0; j < p.n_hidden(); ++j) {
      if (cfg.hidden[j]) acc.add(-p.w(i, j));
    }
  }
  return acc.result();
}

BinaryConfig config_from_index(std::uint64_t index, std::size_t n_visible, std::size_t n_hidden) {
  BinaryConfig c{Bits(n_visible), Bits(n_hidden)};
  for (std::size_t i = 0; i < n_visible; ++i) c.visible[i] = (index >> i) & 1u;
  for (std::size_t j = 0; j < n_hidden; ++j) c.hidden[j] = (index >> (n_visible + j)) & 1u;
  return c;
}

std::uint64_t config_index(const BinaryConfig& cfg) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < cfg.visible.size(); ++i) idx |= std::uint64_t{cfg.visible[i]} << i;
  for (std::size_t j = 0; j < cfg.hidden.size(); ++j) idx |= std::uint64_t{cfg.hidden[j]} << (cfg.visible.size() + j);
  return idx;
}

namespace {

std::uint64_t state_count(const RbmParams& p) {
  p.validate();
  const std::size_t n = p.n_visible() + p.n_hidden();
  if (n > kEnumerationLimit) {
    throw std::invalid_argument("exact enumeration limited to " + std::to_string(kEnumerationLimit) + " units, got " +
                                std::to_string(n));
  }
  return std::uint64_t{1} << n;
}

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and >= 0");
}

// Boltzmann weights relative to the largest: exp(-beta E - shift), plus the
// shift and the exact sum of the relative weights.
struct Weights {
  double shift = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
};

Weights weights(const RbmParams& p, double beta, std::vector<double>* out) {
  check_beta(beta);
  const std::uint64_t n = state_count(p);
  Weights w;
  for (std::uint64_t s = 0; s < n; ++s) {
    w.shift = std::max(w.shift, -beta * energy(config_from_index(s, p.n_visible(), p.n_hidden()), p));
  }
  ExactAccumulator acc;
  if (out) out->resize(n);
  for (std::uint64_t s = 0; s < n; ++s) {
    const double x = std::exp(-beta * energy(config_from_index(s, p.n_visible(), p.n_hidden()), p) - w.shift);
    acc.add(x);
    if (out) (*out)[s] = x;
  }
  w.sum = acc.result();
  return w;
}

}  // namespace

double partition_function_exact(const RbmParams& p, double beta) {
  const auto w = weights(p, beta, nullptr);
  return std::exp(w.shift) * w.sum;
}

double log_partition_function(const RbmParams& p, double beta) {
  const auto w = weights(p, beta, nullptr);
  return w.shift + std::log(w.sum);
}

double boltzmann_prob(const BinaryConfig& cfg, const RbmParams& p, double beta) {
  cfg.validate_against(p);
  const auto w = weights(p, beta, nullptr);
  return std::exp(-beta * energy(cfg, p) - w.shift) / w.sum;
}

std::vector<double> boltzmann_distribution(const RbmParams& p, double beta) {
  std::vector<double> probs;
  const auto w = weights(p, beta, &probs);
  for (double& x : probs) x /= w.sum;
  return probs;
}

std::vector<double> visible_marginal(const RbmParams& p, double beta) {
  const auto joint = boltzmann_distribution(p, beta);
  const std::uint64_t nv = std::uint64_t{1} << p.n_visible();
  std::vector<double> m(nv, 0.0);
  for (std::uint64_t s = 0; s < joint.size(); ++s) m[s & (nv - 1)] += joint[s];
  return m;
}

EnergyMoments energy_moments(const RbmParams& p, double beta) {
  const auto probs = boltzmann_distribution(p, beta);
  std::vector<BinaryConfig> configs(probs.size());
  for (std::uint64_t s = 0; s < probs.size(); ++s) configs[s] = config_from_index(s, p.n_visible(), p.n_hidden());
  return energy_moments(configs, probs, p);
}

EnergyMoments energy_moments(std::span<const BinaryConfig> configs, std::span<const double> weights,
                             const RbmParams& p) {
  if (configs.size() != weights.size() || configs.empty()) throw std::invalid_argument("energy_moments: size mismatch");
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t s = 0; s < configs.size(); ++s) {
    total += weights[s];
    mean += weights[s] * energy(configs[s], p);
  }
  mean /= total;
  double var = 0.0;
  for (std::size_t s = 0; s < configs.size(); ++s) {
    const double d = energy(configs[s], p) - mean;
    var += weights[s] * d * d;
  }
  return {mean, var / total};
}

std::vector<double> hidden_activation(const Bits& visible, const RbmParams& p, double beta) {
  std::vector<double> a(p.n_hidden());
  for (std::size_t j = 0; j < p.n_hidden(); ++j) {
    double x = p.hidden_bias[j];
    for (std::size_t i = 0; i < p.n_visible(); ++i) {
      if (visible[i]) x += p.w(i, j);
    }
    a[j] = nn::sigmoid(beta * x);
  }
  return a;
}

std::vector<double> visible_activation(const Bits& hidden, const RbmParams& p, double beta) {
  std::vector<double> a(p.n_visible());
  for (std::size_t i = 0; i < p.n_visible(); ++i) {
    double x = p.visible_bias[i];
    for (std::size_t j = 0; j < p.n_hidden(); ++j) {
      if (hidden[j]) x += p.w(i, j);
    }
    a[i] = nn::sigmoid(beta * x);
  }
  return a;
}

ChainState ChainState::start(BinaryConfig init, std::uint64_t seed, std::uint64_t stream, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("ChainState: beta must be positive");
  return ChainState{std::move(init), 0, Rng(seed, stream), beta};
}

ChainState gibbs_step(ChainState state, const RbmParams& p) {
  state.config.validate_against(p);
  if (!(state.beta > 0.0)) throw std::invalid_argument("gibbs_step: beta must be positive");
  const auto ph = hidden_activation(state.config.visible, p, state.beta);
  for (std::size_t j = 0; j < ph.size(); ++j) state.config.hidden[j] = state.rng.bernoulli(ph[j]) ? 1 : 0;
  const auto pv = visible_activation(state.config.hidden, p, state.beta);
  for (std::size_t i = 0; i < pv.size(); ++i) state.config.visible[i] = state.rng.bernoulli(pv[i]) ? 1 : 0;
  ++state.steps;
  return state;
}

namespace {

Bits bits_of(std::uint64_t index, std::size_t n) {
  Bits b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = (index >> i) & 1u;
  return b;
}

// Probability of the bit pattern `bits` under independent unit probabilities.
double product_prob(const std::vector<double>& on, std::uint64_t bits) {
  double prob = 1.0;
  for (std::size_t i = 0; i < on.size(); ++i) prob *= ((bits >> i) & 1u) ? on[i] : 1.0 - on[i];
  return prob;
}

}  // namespace

std::vector<double> visible_sweep_kernel(const RbmParams& p, double beta) {
  state_count(p);
  const std::uint64_t nv = std::uint64_t{1} << p.n_visible();
  const std::uint64_t nh = std::uint64_t{1} << p.n_hidden();
  std::vector<std::vector<double>> pv_given_h(nh);
  for (std::uint64_t h = 0; h < nh; ++h) pv_given_h[h] = visible_activation(bits_of(h, p.n_hidden()), p, beta);
  std::vector<double> t(nv * nv, 0.0);
  for (std::uint64_t v = 0; v < nv; ++v) {
    const auto ph = hidden_activation(bits_of(v, p.n_visible()), p, beta);
    for (std::uint64_t h = 0; h < nh; ++h) {
      const double a = product_prob(ph, h);
      for (std::uint64_t v2 = 0; v2 < nv; ++v2) t[v * nv + v2] += a * product_prob(pv_given_h[h], v2);
    }
  }
  return t;
}

std::vector<double> joint_sweep_kernel(const RbmParams& p, double beta) {
  const std::uint64_t n = state_count(p);
  const std::size_t nvis = p.n_visible();
  const std::uint64_t nv = std::uint64_t{1} << nvis;
  const std::uint64_t nh = std::uint64_t{1} << p.n_hidden();
  std::vector<double> t(n * n, 0.0);
  for (std::uint64_t s = 0; s < n; ++s) {
    const auto ph = hidden_activation(bits_of(s & (nv - 1), nvis), p, beta);
    for (std::uint64_t h2 = 0; h2 < nh; ++h2) {
      const double a = product_prob(ph, h2);
      const auto pv = visible_activation(bits_of(h2, p.n_hidden()), p, beta);
      for (std::uint64_t v2 = 0; v2 < nv; ++v2) t[s * n + (v2 | (h2 << nvis))] = a * product_prob(pv, v2);
    }
  }
  return t;
}

}  // namespace scatternet::energymodel
