#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace scatternet::optim {

/// Raised when a gradient entry is NaN or infinite; parameters are untouched.
class NonFiniteGradient : public std::domain_error {
 public:
  explicit NonFiniteGradient(std::size_t index);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Heavy-ball state: v <- alpha v - eps g, theta <- theta + v.
struct MomentumState {
  std::vector<double> velocity;
  double momentum = 0.0;       // alpha in [0, 1)
  double learning_rate = 0.0;  // eps >= 0

  static MomentumState create(std::size_t n, double momentum, double learning_rate);
  void validate() const;
};

void momentum_step(MomentumState& state, std::span<double> params, std::span<const double> grad);

/// theta <- theta - eps g.
void gd_step(std::span<double> params, std::span<const double> grad, double learning_rate);

/// Smooth objective for the minimisation driver.
struct Objective {
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

struct StopRule {
  double grad_sup_norm = 1e-8;
  std::size_t max_iterations = 100000;
  /// Also stop once the objective drops below this value.
  std::optional<double> value_below;
};

struct RunResult {
  std::vector<double> params;
  std::size_t iterations = 0;
  bool converged = false;
  double final_value = 0.0;
};

/// Repeated momentum_step from theta0 until a StopRule condition holds.
/// momentum = 0 gives plain gradient descent.
RunResult minimize(const Objective& objective, std::vector<double> theta0, double momentum, double learning_rate,
                   const StopRule& stop = {});

/// f(theta) = 1/2 sum_i c_i theta_i^2.
Objective diagonal_quadratic(std::vector<double> curvature);

}  // namespace scatternet::optim
