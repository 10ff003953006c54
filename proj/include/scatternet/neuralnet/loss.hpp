#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace scatternet::nn {

/// Normalised exponentials, max-subtracted.
std::vector<double> softmax(std::span<const double> logits);

/// exp(z_i / T) / sum_j exp(z_j / T). T = 1 reproduces softmax bit for bit.
std::vector<double> softmax_temperature(std::span<const double> logits, double temperature);

/// Tolerance on sum(p) = 1 accepted by the entropy family.
inline constexpr double kDistributionTolerance = 1e-9;

/// Throws std::invalid_argument unless p is finite, non-negative and sums to 1.
void validate_distribution(std::span<const double> p);

/// -sum p log p in nats, with 0 log 0 = 0.
double entropy(std::span<const double> p);

/// -sum p log q in nats. Throws std::domain_error if some q_i = 0 where p_i > 0.
double cross_entropy(std::span<const double> p, std::span<const double> q);

/// cross_entropy(p, q) - entropy(p), accumulated term by term.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// Either a class index or a full target distribution.
using Target = std::variant<std::size_t, std::vector<double>>;

struct LossReport {
  double loss = 0.0;                  // nats
  std::vector<double> probabilities;  // softmax(logits)
  std::vector<double> grad_logits;    // q - p
};

/// Fused softmax + cross-entropy. The gradient is formed as q - p directly.
LossReport softmax_cross_entropy(std::span<const double> logits, const Target& target);

}  // namespace scatternet::nn
