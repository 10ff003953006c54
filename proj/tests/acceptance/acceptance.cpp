// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Usage: scatternet_acceptance [seed]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scatternet/harness/experiments.hpp"
#include "scatternet/harness/verify.hpp"
#include "scatternet/io.hpp"
#include "scatternet/neuralnet/layers.hpp"
#include "scatternet/neuralnet/loss.hpp"

using namespace scatternet;
using namespace scatternet::harness;

namespace {

struct Criterion {
  int number;
  std::string name;
  std::optional<double> time_limit_s;
  std::function<std::vector<CheckResult>(std::uint64_t seed)> run;
};

CheckResult registered(const std::string& id, std::uint64_t seed) {
  for (const auto& c : registered_checks()) {
    if (c.id == id) return c.run(seed);
  }
  return make_check(id + " (not registered)", INFINITY, "<", 0.0);
}

std::vector<CheckResult> registered(std::initializer_list<const char*> ids, std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (const char* id : ids) out.push_back(registered(id, seed));
  return out;
}

std::vector<CheckResult> experiment_checks(const std::string& id, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.id = id;
  cfg.seed = seed;
  return run_experiment(cfg).checks;
}

// All files under root, keyed by relative path.
std::map<std::string, std::string> read_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[std::filesystem::relative(e.path(), root).string()] = ss.str();
  }
  return files;
}

// One full verify run plus every experiment, written the way the CLI writes them.
void produce_outputs(const std::filesystem::path& root, std::uint64_t seed) {
  io::write_file(root / "verify" / "report.txt", run_verify_all(seed).text());
  for (const auto& id : experiment_ids()) {
    ExperimentConfig cfg;
    cfg.id = id;
    cfg.seed = seed;
    write_artifacts(run_experiment(cfg), root / id);
  }
}

std::vector<Criterion> criteria() {
  std::vector<Criterion> c;
  c.push_back({1, "envelope law", 1.0, [](std::uint64_t s) { return experiment_checks("envelope", s); }});
  c.push_back({2, "fringe positions", 10.0, [](std::uint64_t s) { return experiment_checks("fringes", s); }});
  c.push_back({3, "kernel symmetry", std::nullopt,
               [](std::uint64_t s) { return registered({"scattering.kernel_rings"}, s); }});
  c.push_back({4, "convolution oracle", std::nullopt,
               [](std::uint64_t s) { return registered({"neuralnet.conv_oracle"}, s); }});
  c.push_back({5, "pooling", std::nullopt, [](std::uint64_t s) {
                 auto out = registered({"neuralnet.pool_oracle", "neuralnet.pool_composition"}, s);
                 const auto shape = nn::max_pool(nn::FeatureTensor({1, 4, 4}), 2, 2).output.shape();
                 out.push_back(make_check("pool.shape_4x4_to_2x2", shape == nn::Shape{1, 2, 2} ? 0.0 : 1.0, "<=", 0.0));
                 return out;
               }});
  c.push_back({6, "gradients", std::nullopt,
               [](std::uint64_t s) { return registered({"neuralnet.gradient_check"}, s); }});
  c.push_back({7, "entropy family", std::nullopt, [](std::uint64_t s) {
                 auto out = registered(
                     {"neuralnet.entropy_examples", "neuralnet.cross_entropy_self", "neuralnet.kl_nonnegative"}, s);
                 double uniform = 0.0;
                 double one_hot = 0.0;
                 for (std::size_t n = 1; n <= 256; ++n) {
                   const std::vector<double> u(n, 1.0 / static_cast<double>(n));
                   uniform = std::max(uniform, std::abs(nn::entropy(u) - std::log(static_cast<double>(n))));
                   std::vector<double> e(n, 0.0);
                   e[n / 2] = 1.0;
                   one_hot = std::max(one_hot, std::abs(nn::entropy(e)));
                 }
                 out.push_back(make_check("entropy.uniform_n", uniform, "<=", 1e-12));
                 out.push_back(make_check("entropy.one_hot", one_hot, "<=", 1e-12));
                 const double ce = nn::cross_entropy(std::vector<double>{0.0, 0.0, 1.0},
                                                     std::vector<double>{0.0010, 0.0001, 0.9989});
                 out.push_back(make_check("cross_entropy.class_probabilities", std::abs(ce + std::log(0.9989)), "<=",
                                          1e-9));
                 return out;
               }});
  c.push_back({8, "temperature softmax", std::nullopt, [](std::uint64_t s) {
                 return registered({"neuralnet.temperature_unit", "neuralnet.temperature_hot",
                                    "neuralnet.entropy_monotone_temperature", "neuralnet.argmax_invariance"},
                                   s);
               }});
  c.push_back({9, "rbm statistics", 60.0, [](std::uint64_t s) {
                 return registered({"energymodel.detailed_balance", "energymodel.gibbs_tv", "energymodel.beta0_uniform"},
                                   s);
               }});
  c.push_back({10, "rbm training", 60.0, [](std::uint64_t s) { return experiment_checks("train-rbm", s); }});
  c.push_back({11, "momentum", std::nullopt, [](std::uint64_t s) {
                 return registered({"optim.momentum_beats_gd", "optim.velocity_decay_exact"}, s);
               }});
  c.push_back({12, "end-to-end cnn", 300.0, [](std::uint64_t s) { return experiment_checks("train-cnn", s); }});
  c.push_back({13, "determinism", std::nullopt, [](std::uint64_t s) {
                 const auto root = std::filesystem::temp_directory_path() /
                                   ("scatternet-acceptance-" + std::to_string(s));
                 std::filesystem::remove_all(root);
                 produce_outputs(root / "a", s);
                 produce_outputs(root / "b", s);
                 const auto a = read_tree(root / "a");
                 const auto b = read_tree(root / "b");
                 std::filesystem::remove_all(root);
                 double differing = a.size() == b.size() ? 0.0 : 1.0;
                 for (const auto& [path, bytes] : a) {
                   const auto it = b.find(path);
                   differing += it != b.end() && it->second == bytes ? 0.0 : 1.0;
                 }
                 return std::vector<CheckResult>{
                     make_check("determinism.files_compared", static_cast<double>(a.size()), ">", 0.0),
                     make_check("determinism.differing_files", differing, "<=", 0.0)};
               }});
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : kDefaultSeed;
  int failures = 0;
  for (const auto& criterion : criteria()) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> checks;
    std::string error;
    try {
      checks = criterion.run(seed);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool passed = error.empty() && !checks.empty();
    std::string detail;
    for (const auto& c : checks) {
      passed = passed && c.passed;
      detail += " | " + format_check(c);
    }
    if (!error.empty()) detail += " | error: " + error;
    char timing[96];
    if (criterion.time_limit_s) {
      passed = passed && elapsed < *criterion.time_limit_s;
      std::snprintf(timing, sizeof timing, " | runtime %.2f s <%g s", elapsed, *criterion.time_limit_s);
    } else {
      std::snprintf(timing, sizeof timing, " | runtime %.2f s", elapsed);
    }
    std::printf("criterion %2d %-20s %s%s%s\n", criterion.number, criterion.name.c_str(), passed ? "PASS" : "FAIL",
                detail.c_str(), timing);
    std::fflush(stdout);
    failures += passed ? 0 : 1;
  }
  std::printf("%d of 13 criteria passed\n", 13 - failures);
  return failures == 0 ? 0 : 1;
}
