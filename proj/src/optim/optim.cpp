#include "scatternet/optim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scatternet::optim {

NonFiniteGradient::NonFiniteGradient(std::size_t index)
    : std::domain_error("non-finite gradient at index " + std::to_string(index)), index_(index) {}

MomentumState MomentumState::create(std::size_t n, double momentum, double learning_rate) {
  MomentumState s{std::vector<double>(n, 0.0), momentum, learning_rate};
  s.validate();
  return s;
}

void MomentumState::validate() const {
  if (!(momentum >= 0.0 && momentum < 1.0)) throw std::invalid_argument("MomentumState: alpha must lie in [0, 1)");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("MomentumState: learning rate must be finite and >= 0");
  }
}

namespace {
void check_gradient(std::span<const double> params, std::span<const double> grad) {
  if (params.size() != grad.size()) throw std::invalid_argument("optimizer: parameter/gradient size mismatch");
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (!std::isfinite(grad[i])) throw NonFiniteGradient(i);
  }
}
}  // namespace

void momentum_step(MomentumState& state, std::span<double> params, std::span<const double> grad) {
  state.validate();
  check_gradient(params, grad);
  if (state.velocity.size() != params.size()) throw std::invalid_argument("momentum_step: velocity size mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.velocity[i] = state.momentum * state.velocity[i] - state.learning_rate * grad[i];
    params[i] += state.velocity[i];
  }
}

void gd_step(std::span<double> params, std::span<const double> grad, double learning_rate) {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("gd_step: learning rate must be finite and >= 0");
  }
  check_gradient(params, grad);
  for (std::size_t i = 0; i < params.size(); ++i) params[i] -= learning_rate * grad[i];
}

RunResult minimize(const Objective& objective, std::vector<double> theta0, double momentum, double learning_rate,
                   const StopRule& stop) {
  RunResult r;
  r.params = std::move(theta0);
  auto state = MomentumState::create(r.params.size(), momentum, learning_rate);
  std::vector<double> g(r.params.size());
  for (;;) {
    r.final_value = objective.value(r.params);
    if (!std::isfinite(r.final_value)) break;  // diverged
    if (stop.value_below && r.final_value < *stop.value_below) {
      r.converged = true;
      break;
    }
    objective.gradient(r.params, g);
    double sup = 0.0;
    for (double gi : g) sup = std::max(sup, std::fabs(gi));
    if (sup < stop.grad_sup_norm) {
      r.converged = true;
      break;
    }
    if (r.iterations >= stop.max_iterations) break;
    try {
      momentum_step(state, r.params, g);
    } catch (const NonFiniteGradient&) {
      break;
    }
    ++r.iterations;
  }
  return r;
}

Objective diagonal_quadratic(std::vector<double> curvature) {
  Objective f;
  f.value = [c = curvature](std::span<const double> x) {
    double v = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) v += 0.5 * c[i] * x[i] * x[i];
    return v;
  };
  f.gradient = [c = std::move(curvature)](std::span<const double> x, std::span<double> g) {
    for (std::size_t i = 0; i < c.size(); ++i) g[i] = c[i] * x[i];
  };
  return f;
}

}  // namespace scatternet::optim
