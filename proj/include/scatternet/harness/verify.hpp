#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scatternet/harness/experiments.hpp"
#include "scatternet/neuralnet/network.hpp"

namespace scatternet::harness {

/// A named oracle or property check. Checks are pure functions of the seed.
struct Check {
  std::string id;
  std::function<CheckResult(std::uint64_t seed)> run;
};

/// Ids of every module invariant; each must have a registered check.
const std::vector<std::string>& declared_invariants();

/// Every registered check, in report order.
const std::vector<Check>& registered_checks();

struct VerifyReport {
  std::vector<CheckResult> results;
  std::vector<std::string> missing;  // declared invariants without a check

  bool passed() const;
  /// One line per check, then the coverage line. Contains no timings.
  std::string text() const;
};

/// Runs the checks whose id starts with `filter` (all when empty). The
/// coverage check is always included.
VerifyReport run_verify_all(std::uint64_t seed, const std::string& filter = "");

/// Central differences against backward() over every parameter.
/// max_rel_error: pairs where both magnitudes are below `floor` count as
/// agreeing. kink_crossings: parameters whose +-step perturbation changes a
/// ReLU sign or a pooling argmax; there the difference quotient straddles a
/// kink and is no estimate of the derivative.
struct GradientCheck {
  double max_rel_error = 0.0;
  std::size_t kink_crossings = 0;
};

GradientCheck check_gradients(nn::Network& net, const nn::FeatureTensor& input, const nn::Target& target,
                              double step, double floor = 1e-10);

/// Iterations to reach f < 1e-6 on f = 1/2 theta^T diag(1, 100) theta from
/// (10, 1): heavy ball (alpha = 0.9, eps = 0.01) against plain gradient
/// descent at the best step on a log grid over (0, 2/L).
struct MomentumBenchmark {
  std::size_t momentum_iterations = 0;
  std::size_t best_gd_iterations = 0;
  double best_gd_learning_rate = 0.0;
};
MomentumBenchmark momentum_vs_gd();

/// Total-variation distance between the empirical joint distribution of a
/// block-Gibbs chain and exact enumeration on a random 3+2 machine.
double gibbs_tv_distance(std::uint64_t seed, std::size_t sweeps);

/// Mode masses on the two-mode 2+2 machine (ground states 0000 and 1111)
/// over a 10^4-sweep budget started in mode A (v = 00).
struct TemperingStudy {
  double tempered_mass_a = 0.0;
  double tempered_mass_b = 0.0;
  double plain_mass_b = 0.0;
};
TemperingStudy tempering_study(std::uint64_t seed);

}  // namespace scatternet::harness
