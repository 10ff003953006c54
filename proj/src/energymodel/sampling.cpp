#include "scatternet/energymodel/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "scatternet/io.hpp"

namespace scatternet::energymodel {

namespace {

enum class Shape { kAscending, kValley };

void validate_ladder(std::span<const double> ladder, Shape shape) {
  if (ladder.empty()) throw std::invalid_argument("schedule: empty beta ladder");
  for (double b : ladder) {
    if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("schedule: every beta must be finite and > 0");
  }
  std::size_t i = 1;
  if (shape == Shape::kValley) {
    while (i < ladder.size() && ladder[i] <= ladder[i - 1]) ++i;
  }
  for (; i < ladder.size(); ++i) {
    if (ladder[i] < ladder[i - 1]) {
      throw std::invalid_argument(shape == Shape::kAscending ? "anneal: beta ladder must be non-decreasing"
                                                             : "temper: beta ladder must descend, then ascend");
    }
  }
}

SampleRun run_schedule(const RbmParams& p, std::span<const double> ladder, const BinaryConfig& init,
                       std::uint64_t seed, std::uint64_t stream, const ScheduleOptions& opts) {
  init.validate_against(p);
  if (opts.sweeps_per_rung < 1 || opts.cycles < 1) throw std::invalid_argument("schedule: sweeps and cycles >= 1");
  std::vector<double> rungs(ladder.begin(), ladder.end());
  if (opts.return_to_unit && rungs.back() != 1.0) rungs.push_back(1.0);

  SampleRun run{{}, {}, ChainState::start(init, seed, stream, rungs.front())};
  run.trace.reserve(rungs.size() * opts.sweeps_per_rung * opts.cycles);
  for (std::size_t c = 0; c < opts.cycles; ++c) {
    for (double beta : rungs) {
      run.final_state.beta = beta;
      for (std::size_t s = 0; s < opts.sweeps_per_rung; ++s) {
        run.final_state = gibbs_step(std::move(run.final_state), p);
        run.trace.push_back({beta, energy(run.final_state.config, p)});
        if (beta == 1.0) run.samples.push_back(run.final_state.config);
      }
    }
  }
  return run;
}

}  // namespace

SampleRun anneal_sample(const RbmParams& p, std::span<const double> ladder, const BinaryConfig& init,
                        std::uint64_t seed, std::uint64_t stream, const ScheduleOptions& opts) {
  validate_ladder(ladder, Shape::kAscending);
  return run_schedule(p, ladder, init, seed, stream, opts);
}

SampleRun temper_sample(const RbmParams& p, std::span<const double> ladder, const BinaryConfig& init,
                        std::uint64_t seed, std::uint64_t stream, const ScheduleOptions& opts) {
  validate_ladder(ladder, Shape::kValley);
  return run_schedule(p, ladder, init, seed, stream, opts);
}

std::string samples_csv(std::span<const BinaryConfig> samples) {
  if (samples.empty()) return {};
  const std::size_t nv = samples.front().visible.size();
  const std::size_t nh = samples.front().hidden.size();
  std::vector<std::string> header;
  for (std::size_t i = 0; i < nv; ++i) header.push_back("v" + std::to_string(i));
  for (std::size_t j = 0; j < nh; ++j) header.push_back("h" + std::to_string(j));
  io::CsvTable t(std::move(header));
  std::vector<double> row(nv + nh);
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < nv; ++i) row[i] = s.visible.at(i);
    for (std::size_t j = 0; j < nh; ++j) row[nv + j] = s.hidden.at(j);
    t.add_row(row);
  }
  return t.str();
}

std::vector<double> visible_histogram(std::span<const BinaryConfig> samples, std::size_t n_visible) {
  if (n_visible > kEnumerationLimit) throw std::invalid_argument("visible_histogram: too many visible units");
  std::vector<double> h(std::size_t{1} << n_visible, 0.0);
  for (const auto& s : samples) {
    if (s.visible.size() != n_visible) throw std::invalid_argument("visible_histogram: size mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n_visible; ++i) idx |= std::size_t{s.visible[i]} << i;
    h[idx] += 1.0;
  }
  if (!samples.empty()) {
    for (double& x : h) x /= static_cast<double>(samples.size());
  }
  return h;
}

}  // namespace scatternet::energymodel
