#include "scatternet/neuralnet/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scatternet::nn {

namespace {

std::vector<double> normalised_exp(std::span<const double> z) {
  if (z.empty()) throw std::invalid_argument("softmax: empty logits");
  const double m = *std::max_element(z.begin(), z.end());
  std::vector<double> q(z.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    q[i] = std::exp(z[i] - m);
    sum += q[i];
  }
  for (double& v : q) v /= sum;
  return q;
}

void check_finite(std::span<const double> z) {
  for (double v : z) {
    if (!std::isfinite(v)) throw std::invalid_argument("softmax: non-finite logit");
  }
}

}  // namespace

std::vector<double> softmax(std::span<const double> logits) {
  check_finite(logits);
  return normalised_exp(logits);
}

std::vector<double> softmax_temperature(std::span<const double> logits, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("softmax_temperature: temperature must be positive and finite");
  }
  check_finite(logits);
  std::vector<double> scaled(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) scaled[i] = logits[i] / temperature;
  return normalised_exp(scaled);
}

void validate_distribution(std::span<const double> p) {
  if (p.empty()) throw std::invalid_argument("distribution is empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i])) throw std::invalid_argument("distribution has a non-finite entry");
    if (p[i] < 0.0) throw std::invalid_argument("distribution has a negative entry at " + std::to_string(i));
    sum += p[i];
  }
  if (std::fabs(sum - 1.0) > kDistributionTolerance) {
    throw std::invalid_argument("distribution is not normalised (sum " + std::to_string(sum) + ")");
  }
}

double entropy(std::span<const double> p) {
  validate_distribution(p);
  double h = 0.0;
  for (double pi : p) {
    if (pi > 0.0) h -= pi * std::log(pi);
  }
  return h;
}

double cross_entropy(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("cross_entropy: size mismatch");
  validate_distribution(p);
  validate_distribution(q);
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) throw std::domain_error("cross_entropy: q vanishes where p does not");
    h -= p[i] * std::log(q[i]);
  }
  return h;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: size mismatch");
  validate_distribution(p);
  validate_distribution(q);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) throw std::domain_error("kl_divergence: q vanishes where p does not");
    d += p[i] * (std::log(p[i]) - std::log(q[i]));
  }
  return d;
}

LossReport softmax_cross_entropy(std::span<const double> logits, const Target& target) {
  LossReport r;
  r.probabilities = softmax(logits);
  const std::size_t n = logits.size();
  std::vector<double> p(n, 0.0);
  if (const auto* cls = std::get_if<std::size_t>(&target)) {
    if (*cls >= n) throw std::invalid_argument("softmax_cross_entropy: class index out of range");
    p[*cls] = 1.0;
  } else {
    p = std::get<std::vector<double>>(target);
    if (p.size() != n) throw std::invalid_argument("softmax_cross_entropy: target size mismatch");
    validate_distribution(p);
  }

  // log q_i = z_i - m - log sum exp(z - m), never log of an underflowed q.
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - m);
  const double log_norm = m + std::log(sum);
  r.loss = 0.0;
  r.grad_logits.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] > 0.0) r.loss -= p[i] * (logits[i] - log_norm);
    r.grad_logits[i] = r.probabilities[i] - p[i];
  }
  return r;
}

}  // namespace scatternet::nn
