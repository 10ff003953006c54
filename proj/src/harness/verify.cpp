#include "scatternet/harness/verify.hpp"

#include <algorithm>
#include <cmath>

#include "checks.hpp"
#include "scatternet/harness/gratings.hpp"
#include "scatternet/neuralnet/layers.hpp"

namespace scatternet::harness {

namespace {

ExperimentConfig default_config(const std::string& id, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.id = id;
  cfg.seed = seed;
  return cfg;
}

// Re-labels an experiment's check under a verify id.
Check from_experiment(std::string id, std::string experiment, std::size_t index) {
  return {id, [id, experiment, index](std::uint64_t seed) {
            auto c = run_experiment(default_config(experiment, seed)).checks.at(index);
            c.id = id;
            return c;
          }};
}

// Sum of squared responses of the horizontal second-difference filter
// [-1 2 -1] (centre row of a 3x3 kernel) over the valid region.
double oriented_energy(const nn::FeatureTensor& img) {
  auto k = nn::ConvLayer::zeros(1, 1, 3, 3);
  k.kernel(0, 0, 1, 0) = -1.0;
  k.kernel(0, 0, 1, 1) = 2.0;
  k.kernel(0, 0, 1, 2) = -1.0;
  double e = 0.0;
  for (double v : nn::conv2d(img, k).data()) e += v * v;
  return e;
}

void add_harness_checks(std::vector<Check>& out) {
  out.push_back({"harness.experiment_determinism", [](std::uint64_t seed) {
                   double mismatches = 0.0;
                   for (const char* id : {"envelope", "fringes", "train-rbm", "sample-rbm"}) {
                     const auto a = run_experiment(default_config(id, seed));
                     const auto b = run_experiment(default_config(id, seed));
                     mismatches += a.artifacts == b.artifacts ? 0 : 1;
                   }
                   return make_check("harness.experiment_determinism", mismatches, "<=", 0.0);
                 }});
  out.push_back({"harness.gratings_determinism", [](std::uint64_t seed) {
                   GratingDataset cfg;
                   cfg.samples_per_class = 20;
                   const auto a = gen_gratings(cfg, seed);
                   const auto b = gen_gratings(cfg, seed);
                   double mismatches = a.size() == b.size() ? 0.0 : 1.0;
                   for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
                     mismatches += a[i].image == b[i].image && a[i].label == b[i].label ? 0 : 1;
                   }
                   return make_check("harness.gratings_determinism", mismatches, "<=", 0.0);
                 }});
  out.push_back({"harness.gratings_separable", [](std::uint64_t seed) {
                   // Noise-free horizontal (0 deg) and vertical (90 deg) wave
                   // vectors: the filter sees the 0 deg class and is blind to the
                   // other, which is constant along rows.
                   GratingDataset cfg;
                   cfg.orientations_deg = {0.0, 90.0};
                   cfg.noise = 0.0;
                   cfg.samples_per_class = 100;
                   double lowest0 = INFINITY;
                   double highest1 = -INFINITY;
                   for (const auto& s : gen_gratings(cfg, seed)) {
                     const double e = oriented_energy(s.image);
                     if (s.label == 0) lowest0 = std::min(lowest0, e);
                     if (s.label == 1) highest1 = std::max(highest1, e);
                   }
                   return make_check("harness.gratings_separable", lowest0 - highest1, ">", 0.0);
                 }});
  out.push_back(from_experiment("scattering.envelope_quadrature", "envelope", 0));
  out.push_back(from_experiment("scattering.envelope_zero", "envelope", 1));
  out.push_back(from_experiment("scattering.fringe_positions", "fringes", 0));
  out.push_back(from_experiment("energymodel.cd_kl_reduction", "train-rbm", 0));
  out.push_back(from_experiment("energymodel.cd_final_kl", "train-rbm", 1));
  out.push_back(from_experiment("neuralnet.train_cnn_accuracy", "train-cnn", 0));
}

}  // namespace

const std::vector<std::string>& declared_invariants() {
  static const std::vector<std::string> ids{
      "wavefield.phase_group",
      "wavefield.phase_unit_modulus",
      "wavefield.series_monotone",
      "wavefield.plane_wave_modulus",
      "scattering.green_reciprocity",
      "scattering.born_linearity",
      "scattering.slit_symmetry",
      "scattering.kernel_rings",
      "scattering.response_phase_invariance",
      "neuralnet.conv_translation",
      "neuralnet.softmax_normalised",
      "neuralnet.argmax_invariance",
      "neuralnet.entropy_monotone_temperature",
      "neuralnet.pool_composition",
      "neuralnet.gradient_check",
      "neuralnet.gradient_check_layers",
      "energymodel.detailed_balance",
      "energymodel.z_permutation_invariance",
      "energymodel.energy_swap_invariance",
      "energymodel.sampler_determinism",
      "energymodel.beta0_uniform",
      "optim.block_linearity",
      "optim.alpha0_matches_gd",
      "optim.momentum_bounded",
      "harness.experiment_determinism",
  };
  return ids;
}

const std::vector<Check>& registered_checks() {
  static const std::vector<Check> checks = [] {
    std::vector<Check> c;
    detail::add_wavefield_checks(c);
    detail::add_scattering_checks(c);
    detail::add_neuralnet_checks(c);
    detail::add_energymodel_checks(c);
    detail::add_optim_checks(c);
    add_harness_checks(c);
    return c;
  }();
  return checks;
}

bool VerifyReport::passed() const {
  return missing.empty() && std::all_of(results.begin(), results.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::text() const {
  std::string s;
  for (const auto& r : results) s += format_check(r) + "\n";
  for (const auto& m : missing) s += "# invariant without a check: " + m + "\n";
  return s;
}

VerifyReport run_verify_all(std::uint64_t seed, const std::string& filter) {
  VerifyReport report;
  const auto& checks = registered_checks();
  for (const auto& id : declared_invariants()) {
    const bool covered = std::any_of(checks.begin(), checks.end(), [&](const Check& c) { return c.id == id; });
    if (!covered) report.missing.push_back(id);
  }
  for (const auto& c : checks) {
    if (c.id.rfind(filter, 0) != 0) continue;
    report.results.push_back(c.run(seed));
  }
  report.results.push_back(
      make_check("harness.verify_coverage", static_cast<double>(report.missing.size()), "<=", 0.0));
  return report;
}

namespace {

// ReLU input signs and pooling argmax indices of one forward pass.
std::vector<std::size_t> activation_pattern(const nn::Network& net, const nn::ForwardCache& cache) {
  std::vector<std::size_t> pattern;
  for (std::size_t i = 0; i < net.layers().size(); ++i) {
    if (std::holds_alternative<nn::ReluLayer>(net.layers()[i])) {
      for (double v : cache.inputs[i].data()) pattern.push_back(v > 0.0 ? 1 : 0);
    }
    pattern.insert(pattern.end(), cache.argmax[i].begin(), cache.argmax[i].end());
  }
  return pattern;
}

}  // namespace

GradientCheck check_gradients(nn::Network& net, const nn::FeatureTensor& input, const nn::Target& target,
                              double step, double floor) {
  const auto base = nn::forward(net, input);
  const auto analytic = nn::backward(net, base, target).gradients.blocks;
  const auto pattern = activation_pattern(net, base);
  GradientCheck out;
  bool crossed = false;
  auto loss = [&] {
    const auto cache = nn::forward(net, input);
    crossed = crossed || activation_pattern(net, cache) != pattern;
    return nn::backward(net, cache, target).loss.loss;
  };
  auto blocks = net.parameter_blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      double& p = blocks[b][i];
      const double saved = p;
      crossed = false;
      p = saved + step;
      const double up = loss();
      p = saved - step;
      const double down = loss();
      p = saved;
      if (crossed) ++out.kink_crossings;
      const double numeric = (up - down) / (2.0 * step);
      const double a = analytic[b][i];
      const double denom = std::max(std::abs(a), std::abs(numeric));
      if (denom < floor) continue;
      out.max_rel_error = std::max(out.max_rel_error, std::abs(a - numeric) / denom);
    }
  }
  return out;
}

}  // namespace scatternet::harness
