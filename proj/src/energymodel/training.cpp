#include "scatternet/energymodel/training.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "scatternet/io.hpp"
#include "scatternet/optim.hpp"

namespace scatternet::energymodel {

RbmParams random_rbm(std::size_t n_visible, std::size_t n_hidden, double scale, Rng& rng) {
  RbmParams p = RbmParams::zeros(n_visible, n_hidden);
  for (double& w : p.coupling) w = scale * rng.normal();
  return p;
}

std::vector<double> data_distribution(std::span<const Bits> data, std::size_t n_visible) {
  if (n_visible > kEnumerationLimit) throw std::invalid_argument("data_distribution: too many visible units");
  std::vector<double> d(std::size_t{1} << n_visible, 0.0);
  for (const auto& v : data) {
    if (v.size() != n_visible) throw std::invalid_argument("data_distribution: dimension mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n_visible; ++i) idx |= std::size_t{v[i] != 0} << i;
    d[idx] += 1.0;
  }
  for (double& x : d) x /= static_cast<double>(data.size());
  return d;
}

double kl_to_model(std::span<const double> p_data, std::span<const double> q_model) {
  if (p_data.size() != q_model.size()) throw std::invalid_argument("kl_to_model: size mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < p_data.size(); ++i) {
    if (p_data[i] == 0.0) continue;
    if (q_model[i] == 0.0) return std::numeric_limits<double>::infinity();
    kl += p_data[i] * (std::log(p_data[i]) - std::log(q_model[i]));
  }
  return kl;
}

namespace {

Bits sample_bits(const std::vector<double>& prob, Rng& rng) {
  Bits b(prob.size());
  for (std::size_t i = 0; i < prob.size(); ++i) b[i] = rng.bernoulli(prob[i]) ? 1 : 0;
  return b;
}

}  // namespace

CdResult cd_train(std::span<const Bits> data, RbmParams init, const CdConfig& cfg,
                  const std::function<void(const CdEpoch&)>& on_epoch) {
  init.validate();
  if (data.empty()) throw std::invalid_argument("cd_train: empty data set");
  if (cfg.k < 1) throw std::invalid_argument("cd_train: k must be >= 1");
  const std::size_t nv = init.n_visible();
  const std::size_t nh = init.n_hidden();
  for (const auto& v : data) {
    if (v.size() != nv) {
      throw std::invalid_argument("cd_train: data vector has " + std::to_string(v.size()) + " units, machine has " +
                                  std::to_string(nv));
    }
    for (auto x : v) {
      if (x > 1) throw std::invalid_argument("cd_train: data must be binary");
    }
  }
  const bool exact = nv + nh <= kEnumerationLimit;
  const std::vector<double> p_data = exact ? data_distribution(data, nv) : std::vector<double>{};

  CdResult r{std::move(init), {}};
  RbmParams& p = r.params;
  auto sw = optim::MomentumState::create(p.coupling.size(), cfg.momentum, cfg.learning_rate);
  auto sb = optim::MomentumState::create(nv, cfg.momentum, cfg.learning_rate);
  auto sc = optim::MomentumState::create(nh, cfg.momentum, cfg.learning_rate);

  Rng rng(cfg.seed, 2);
  Rng shuffle_rng(cfg.seed, 3);
  const std::size_t batch = cfg.batch_size == 0 ? data.size() : cfg.batch_size;
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> gw(p.coupling.size());
  std::vector<double> gb(nv);
  std::vector<double> gc(nh);

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (batch < data.size()) {
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle_rng.index(i)]);
    }
    double recon = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t stop = std::min(order.size(), start + batch);
      std::fill(gw.begin(), gw.end(), 0.0);
      std::fill(gb.begin(), gb.end(), 0.0);
      std::fill(gc.begin(), gc.end(), 0.0);
      for (std::size_t n = start; n < stop; ++n) {
        const Bits& v0 = data[order[n]];
        const auto ph0 = hidden_activation(v0, p, 1.0);
        Bits h = sample_bits(ph0, rng);
        std::vector<double> pv;
        Bits vk;
        for (std::size_t step = 0; step < cfg.k; ++step) {
          pv = visible_activation(h, p, 1.0);
          vk = sample_bits(pv, rng);
          if (step + 1 < cfg.k) h = sample_bits(hidden_activation(vk, p, 1.0), rng);
        }
        const auto phk = hidden_activation(vk, p, 1.0);
        // Descent direction on the negative log-likelihood: -(positive - negative).
        for (std::size_t i = 0; i < nv; ++i) {
          gb[i] -= static_cast<double>(v0[i]) - static_cast<double>(vk[i]);
          for (std::size_t j = 0; j < nh; ++j) {
            gw[i * nh + j] -= static_cast<double>(v0[i]) * ph0[j] - static_cast<double>(vk[i]) * phk[j];
          }
          const double d = static_cast<double>(v0[i]) - pv[i];
          recon += d * d;
        }
        for (std::size_t j = 0; j < nh; ++j) gc[j] -= ph0[j] - phk[j];
      }
      const double inv = 1.0 / static_cast<double>(stop - start);
      for (double& g : gw) g *= inv;
      for (double& g : gb) g *= inv;
      for (double& g : gc) g *= inv;
      optim::momentum_step(sw, p.coupling, gw);
      optim::momentum_step(sb, p.visible_bias, gb);
      optim::momentum_step(sc, p.hidden_bias, gc);
    }
    CdEpoch e{epoch, CdMetric::kExactKl, 0.0};
    if (exact) {
      e.value = kl_to_model(p_data, visible_marginal(p, 1.0));
    } else {
      e.metric = CdMetric::kReconstructionError;
      e.value = recon / static_cast<double>(data.size() * nv);
    }
    r.history.push_back(e);
    if (on_epoch) on_epoch(e);
  }
  return r;
}

std::string cd_history_csv(std::span<const CdEpoch> history) {
  const bool proxy = !history.empty() && history.front().metric == CdMetric::kReconstructionError;
  io::CsvTable t({"epoch", proxy ? "reconstruction_error_proxy" : "exact_kl"});
  for (const auto& e : history) t.add_row({static_cast<double>(e.epoch), e.value});
  return t.str();
}

std::string save_rbm_checkpoint(const RbmParams& p) {
  p.validate();
  io::CheckpointSection s{"rbm", {p.n_visible(), p.n_hidden()}, {}, {}};
  s.values = p.visible_bias;
  s.values.insert(s.values.end(), p.hidden_bias.begin(), p.hidden_bias.end());
  s.values.insert(s.values.end(), p.coupling.begin(), p.coupling.end());
  const io::CheckpointSection sections[] = {s};
  return io::encode_checkpoint("rbm", sections);
}

RbmParams load_rbm_checkpoint(std::istream& in) {
  const auto sections = io::decode_checkpoint(in, "rbm");
  if (sections.size() != 1 || sections[0].type != "rbm" || sections[0].shape.size() != 2) {
    throw std::runtime_error("checkpoint: expected a single rbm section");
  }
  const auto& s = sections[0];
  RbmParams p = RbmParams::zeros(s.shape[0], s.shape[1]);
  if (s.values.size() != p.n_visible() + p.n_hidden() + p.coupling.size()) {
    throw std::runtime_error("checkpoint: rbm value count mismatch");
  }
  auto it = s.values.begin();
  auto take = [&](std::vector<double>& dst) {
    std::copy(it, it + static_cast<long>(dst.size()), dst.begin());
    it += static_cast<long>(dst.size());
  };
  take(p.visible_bias);
  take(p.hidden_bias);
  take(p.coupling);
  p.validate();
  return p;
}

}  // namespace scatternet::energymodel
