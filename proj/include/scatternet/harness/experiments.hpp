#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "scatternet/energymodel/rbm.hpp"
#include "scatternet/harness/config.hpp"

namespace scatternet::harness {

/// One asserted quantity: passed iff `measured relation tolerance` holds.
struct CheckResult {
  std::string id;
  bool passed = false;
  double measured = 0.0;
  std::string relation;  // "<", "<=", ">=" or ">"
  double tolerance = 0.0;
};

CheckResult make_check(std::string id, double measured, std::string relation, double tolerance);

/// "<id> <PASS|FAIL> <measured> <relation><tolerance>"; the measured value carries
/// 17 significant digits, the tolerance its shortest exact form.
std::string format_check(const CheckResult& c);

struct ExperimentResult {
  std::string id;
  std::vector<CheckResult> checks;
  /// File name -> bytes, written under the experiment's output directory.
  std::map<std::string, std::string> artifacts;
  std::vector<std::string> notes;

  bool passed() const;
};

const std::vector<std::string>& experiment_ids();

/// Dispatches on cfg.id. A pure function of cfg (the output directory is not
/// consulted).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

ExperimentResult run_envelope(const ExperimentConfig& cfg);
ExperimentResult run_fringes(const ExperimentConfig& cfg);
ExperimentResult run_kernel_compare(const ExperimentConfig& cfg);
ExperimentResult run_train_cnn(const ExperimentConfig& cfg);
ExperimentResult run_train_rbm(const ExperimentConfig& cfg);
ExperimentResult run_sample_rbm(const ExperimentConfig& cfg);

/// Two visible and two hidden units with W = w and b = c = -w. The ground
/// states 0000 and 1111 sit at E = 0 and every other state at E >= w, so for
/// large w a block-Gibbs chain at beta = 1 rarely crosses between them.
energymodel::RbmParams two_mode_machine(double coupling);

/// Writes every artifact plus summary.txt (check lines and notes) into dir.
void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace scatternet::harness
