#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scatternet/harness/experiments.hpp"
#include "scatternet/harness/verify.hpp"
#include "scatternet/io.hpp"

namespace fs = std::filesystem;
using namespace scatternet::harness;

namespace {

fs::path output_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SCATTERNET_OUT"); env && *env) return env;
  return "scatternet-out";
}

int run_one(const std::string& id, std::uint64_t seed, const fs::path& root, const std::vector<std::string>& params) {
  ExperimentConfig cfg;
  cfg.id = id;
  cfg.seed = seed;
  cfg.out_dir = root / id;
  for (const auto& p : params) add_param(cfg, p);
  const auto result = run_experiment(cfg);
  write_artifacts(result, cfg.out_dir);
  for (const auto& c : result.checks) std::cout << format_check(c) << "\n";
  for (const auto& n : result.notes) std::cout << "# " << n << "\n";
  std::cout << "# artifacts: " << cfg.out_dir.string() << "\n";
  return result.passed() ? 0 : 1;
}

int run_all(std::uint64_t seed, const fs::path& root, bool parallel) {
  int status = 0;
  if (!parallel) {
    for (const auto& id : experiment_ids()) status |= run_one(id, seed, root, {});
    return status;
  }
  // One process per experiment, each writing only its own directory.
  std::vector<pid_t> children;
  for (const auto& id : experiment_ids()) {
    std::cout.flush();
    const pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("fork failed");
    if (pid == 0) {
      int code = 2;
      try {
        code = run_one(id, seed, root, {});
      } catch (const std::exception& e) {
        std::cerr << id << ": " << e.what() << "\n";
      }
      std::cout.flush();
      _exit(code);
    }
    children.push_back(pid);
  }
  for (pid_t pid : children) {
    int ws = 0;
    waitpid(pid, &ws, 0);
    if (!WIFEXITED(ws) || WEXITSTATUS(ws) != 0) status = 1;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering-model toolkit: experiments and verification suite"};
  std::string command;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::vector<std::string> params;
  bool parallel = false;
  std::string filter;

  std::string ids;
  for (const auto& id : experiment_ids()) ids += (ids.empty() ? "" : ", ") + id;
  app.add_option("command", command, "Experiment id (" + ids + "), verify, all or list")->required();
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--out", out, "Output root (default: $SCATTERNET_OUT or ./scatternet-out)");
  app.add_option("--param", params, "Experiment parameter key=value; repeatable");
  app.add_flag("--parallel", parallel, "With 'all': one process per experiment");
  app.add_option("--filter", filter, "With 'verify': only checks whose id starts with this prefix");
  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path root = output_root(out);
    if (command == "list") {
      for (const auto& id : experiment_ids()) std::cout << id << "\n";
      return 0;
    }
    if (command == "verify") {
      if (!params.empty()) throw std::invalid_argument("verify takes no --param");
      const auto report = run_verify_all(seed, filter);
      const std::string text = report.text();
      scatternet::io::write_file(root / "verify" / "report.txt", text);
      std::cout << text;
      return report.passed() ? 0 : 1;
    }
    if (command == "all") {
      if (!params.empty()) throw std::invalid_argument("all takes no --param");
      return run_all(seed, root, parallel);
    }
    return run_one(command, seed, root, params);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
