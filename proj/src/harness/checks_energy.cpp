#include <algorithm>
#include <cmath>
#include <numeric>

#include "checks.hpp"
#include "scatternet/energymodel/markov.hpp"
#include "scatternet/energymodel/rbm.hpp"
#include "scatternet/energymodel/sampling.hpp"
#include "scatternet/energymodel/training.hpp"
#include "scatternet/optim.hpp"
#include "scatternet/oracles.hpp"

namespace scatternet::harness {

using energymodel::BinaryConfig;
using energymodel::RbmParams;

namespace {

RbmParams random_params(std::size_t nv, std::size_t nh, double scale, Rng& rng) {
  RbmParams p = RbmParams::zeros(nv, nh);
  for (auto& x : p.visible_bias) x = scale * rng.normal();
  for (auto& x : p.hidden_bias) x = scale * rng.normal();
  for (auto& x : p.coupling) x = scale * rng.normal();
  return p;
}

BinaryConfig random_config(std::size_t nv, std::size_t nh, Rng& rng) {
  BinaryConfig c{energymodel::Bits(nv), energymodel::Bits(nh)};
  for (auto& b : c.visible) b = rng.bernoulli(0.5) ? 1 : 0;
  for (auto& b : c.hidden) b = rng.bernoulli(0.5) ? 1 : 0;
  return c;
}

}  // namespace

double gibbs_tv_distance(std::uint64_t seed, std::size_t sweeps) {
  Rng rng(seed, 400);
  const auto p = random_params(3, 2, 0.7, rng);
  const auto exact = energymodel::boltzmann_distribution(p, 1.0);
  std::vector<double> counts(exact.size(), 0.0);
  auto state = energymodel::ChainState::start(random_config(3, 2, rng), seed, 401);
  for (std::size_t s = 0; s < sweeps; ++s) {
    state = energymodel::gibbs_step(std::move(state), p);
    counts[energymodel::config_index(state.config)] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(sweeps);
  return energymodel::total_variation(counts, exact);
}

TemperingStudy tempering_study(std::uint64_t seed) {
  const auto p = two_mode_machine(12.0);
  const BinaryConfig start{{0, 0}, {0, 0}};
  constexpr std::size_t kBudget = 10000;

  const double unit[] = {1.0};
  energymodel::ScheduleOptions plain;
  plain.sweeps_per_rung = kBudget;
  const auto a = energymodel::anneal_sample(p, unit, start, seed, 0, plain);

  const double ladder[] = {1.0, 0.5, 0.2, 0.1, 0.2, 0.5, 1.0};
  energymodel::ScheduleOptions tempered;
  tempered.sweeps_per_rung = 10;
  tempered.cycles = kBudget / (tempered.sweeps_per_rung * std::size(ladder));
  const auto t = energymodel::temper_sample(p, ladder, start, seed, 0, tempered);

  const auto ha = energymodel::visible_histogram(a.samples, 2);
  const auto ht = energymodel::visible_histogram(t.samples, 2);
  return {ht[0], ht[3], ha[3]};
}

MomentumBenchmark momentum_vs_gd() {
  const auto f = optim::diagonal_quadratic({1.0, 100.0});
  optim::StopRule stop;
  stop.value_below = 1e-6;
  MomentumBenchmark b;
  b.momentum_iterations = optim::minimize(f, {10.0, 1.0}, 0.9, 0.01, stop).iterations;
  b.best_gd_iterations = stop.max_iterations + 1;
  // 60 log-spaced steps in [1e-4, 2/L), L = 100.
  for (int i = 0; i < 60; ++i) {
    const double eps = 1e-4 * std::pow(0.0199 / 1e-4, i / 59.0);
    const auto r = optim::minimize(f, {10.0, 1.0}, 0.0, eps, stop);
    if (r.converged && r.iterations < b.best_gd_iterations) {
      b.best_gd_iterations = r.iterations;
      b.best_gd_learning_rate = eps;
    }
  }
  return b;
}

namespace detail {

void add_energymodel_checks(std::vector<Check>& out) {
  out.push_back({"energymodel.detailed_balance", [](std::uint64_t seed) {
                   Rng rng(seed, 402);
                   double worst = 0.0;
                   for (double beta : {1.0, 0.6, 2.5}) {
                     const auto p = random_params(3, 2, 1.0, rng);
                     const auto t = energymodel::visible_sweep_kernel(p, beta);
                     const auto pi = energymodel::visible_marginal(p, beta);
                     const std::size_t n = pi.size();
                     for (std::size_t x = 0; x < n; ++x)
                       for (std::size_t y = 0; y < n; ++y)
                         worst = std::max(worst, std::abs(pi[x] * t[x * n + y] - pi[y] * t[y * n + x]));
                   }
                   return make_check("energymodel.detailed_balance", worst, "<=", 1e-10);
                 }});
  out.push_back({"energymodel.joint_stationarity", [](std::uint64_t seed) {
                   Rng rng(seed, 403);
                   const auto p = random_params(3, 2, 1.0, rng);
                   const auto t = energymodel::joint_sweep_kernel(p, 1.0);
                   const auto pi = energymodel::boltzmann_distribution(p, 1.0);
                   const std::size_t n = pi.size();
                   double worst = 0.0;
                   for (std::size_t y = 0; y < n; ++y) {
                     double s = 0.0;
                     for (std::size_t x = 0; x < n; ++x) s += pi[x] * t[x * n + y];
                     worst = std::max(worst, std::abs(s - pi[y]));
                   }
                   return make_check("energymodel.joint_stationarity", worst, "<=", 1e-10);
                 }});
  out.push_back({"energymodel.z_permutation_invariance", [](std::uint64_t seed) {
                   Rng rng(seed, 404);
                   double mismatches = 0.0;
                   for (int t = 0; t < 20; ++t) {
                     const auto p = random_params(4, 3, 1.0, rng);
                     std::vector<std::size_t> sv(4);
                     std::vector<std::size_t> sh(3);
                     std::iota(sv.begin(), sv.end(), std::size_t{0});
                     std::iota(sh.begin(), sh.end(), std::size_t{0});
                     for (std::size_t i = sv.size(); i > 1; --i) std::swap(sv[i - 1], sv[rng.index(i)]);
                     for (std::size_t i = sh.size(); i > 1; --i) std::swap(sh[i - 1], sh[rng.index(i)]);
                     RbmParams q = RbmParams::zeros(4, 3);
                     for (std::size_t i = 0; i < 4; ++i) q.visible_bias[i] = p.visible_bias[sv[i]];
                     for (std::size_t j = 0; j < 3; ++j) q.hidden_bias[j] = p.hidden_bias[sh[j]];
                     for (std::size_t i = 0; i < 4; ++i)
                       for (std::size_t j = 0; j < 3; ++j) q.w(i, j) = p.w(sv[i], sh[j]);
                     const double beta = rng.uniform(0.1, 3.0);
                     mismatches += energymodel::partition_function_exact(p, beta) ==
                                           energymodel::partition_function_exact(q, beta)
                                       ? 0
                                       : 1;
                   }
                   return make_check("energymodel.z_permutation_invariance", mismatches, "<=", 0.0);
                 }});
  out.push_back({"energymodel.energy_swap_invariance", [](std::uint64_t seed) {
                   Rng rng(seed, 405);
                   double mismatches = 0.0;
                   for (int t = 0; t < 1000; ++t) {
                     const std::size_t nv = 1 + rng.index(6);
                     const std::size_t nh = 1 + rng.index(6);
                     const auto p = random_params(nv, nh, 2.0, rng);
                     const auto c = random_config(nv, nh, rng);
                     const BinaryConfig swapped{c.hidden, c.visible};
                     mismatches += energymodel::energy(c, p) == energymodel::energy(swapped, p.swapped()) ? 0 : 1;
                   }
                   return make_check("energymodel.energy_swap_invariance", mismatches, "<=", 0.0);
                 }});
  out.push_back({"energymodel.sampler_determinism", [](std::uint64_t seed) {
                   Rng rng(seed, 406);
                   const auto p = random_params(3, 2, 1.0, rng);
                   const auto init = random_config(3, 2, rng);
                   double mismatches = 0.0;
                   auto a = energymodel::ChainState::start(init, seed, 7);
                   auto b = energymodel::ChainState::start(init, seed, 7);
                   for (int s = 0; s < 1000; ++s) {
                     a = energymodel::gibbs_step(std::move(a), p);
                     b = energymodel::gibbs_step(std::move(b), p);
                     mismatches += a.config == b.config ? 0 : 1;
                   }
                   const double ladder[] = {1.0, 0.4, 0.1, 0.4, 1.0};
                   energymodel::ScheduleOptions opts;
                   opts.sweeps_per_rung = 20;
                   opts.cycles = 5;
                   const auto t1 = energymodel::temper_sample(p, ladder, init, seed, 3, opts);
                   const auto t2 = energymodel::temper_sample(p, ladder, init, seed, 3, opts);
                   mismatches += t1.samples == t2.samples ? 0 : 1;
                   const double up[] = {0.2, 1.0, 5.0};
                   const auto a1 = energymodel::anneal_sample(p, up, init, seed, 4, opts);
                   const auto a2 = energymodel::anneal_sample(p, up, init, seed, 4, opts);
                   mismatches += a1.samples == a2.samples ? 0 : 1;
                   const energymodel::TransitionMatrix tm(3, {0.2, 0.5, 0.3, 0.1, 0.1, 0.8, 0.6, 0.3, 0.1});
                   mismatches += energymodel::markov_chain_run(tm, 0, 1000, seed) ==
                                         energymodel::markov_chain_run(tm, 0, 1000, seed)
                                     ? 0
                                     : 1;
                   return make_check("energymodel.sampler_determinism", mismatches, "<=", 0.0);
                 }});
  out.push_back({"energymodel.beta0_uniform", [](std::uint64_t seed) {
                   Rng rng(seed, 407);
                   double mismatches = 0.0;
                   for (int t = 0; t < 10; ++t) {
                     const std::size_t nv = 1 + rng.index(5);
                     const std::size_t nh = 1 + rng.index(5);
                     const auto p = random_params(nv, nh, 3.0, rng);
                     const auto d = energymodel::boltzmann_distribution(p, 0.0);
                     const double u = 1.0 / static_cast<double>(d.size());
                     for (double x : d) mismatches += x == u ? 0 : 1;
                     mismatches += energymodel::partition_function_exact(p, 0.0) == static_cast<double>(d.size()) ? 0 : 1;
                   }
                   return make_check("energymodel.beta0_uniform", mismatches, "<=", 0.0);
                 }});
  out.push_back({"energymodel.partition_oracle", [](std::uint64_t seed) {
                   Rng rng(seed, 408);
                   double worst = 0.0;
                   for (int t = 0; t < 50; ++t) {
                     const std::size_t nv = 1 + rng.index(6);
                     const std::size_t nh = 1 + rng.index(6);
                     const auto p = random_params(nv, nh, 1.0, rng);
                     const double beta = rng.uniform(0.1, 2.0);
                     const double z = energymodel::partition_function_exact(p, beta);
                     const double ref = oracle::rbm_partition_marginal(p.visible_bias, p.hidden_bias, p.coupling, beta);
                     worst = std::max(worst, std::abs(z - ref) / ref);
                     const auto d = energymodel::boltzmann_distribution(p, beta);
                     const auto dr = oracle::rbm_joint_distribution(p.visible_bias, p.hidden_bias, p.coupling, beta);
                     for (std::size_t i = 0; i < d.size(); ++i) worst = std::max(worst, std::abs(d[i] - dr[i]));
                   }
                   return make_check("energymodel.partition_oracle", worst, "<=", 1e-12);
                 }});
  out.push_back({"energymodel.point_mass_variance", [](std::uint64_t seed) {
                   Rng rng(seed, 409);
                   const auto p = random_params(3, 3, 1.0, rng);
                   const BinaryConfig c[] = {random_config(3, 3, rng)};
                   const double w[] = {1.0};
                   return make_check("energymodel.point_mass_variance", energymodel::energy_moments(c, w, p).variance,
                                     "<=", 0.0);
                 }});
  out.push_back({"energymodel.ground_state_limit", [](std::uint64_t seed) {
                   Rng rng(seed, 410);
                   const auto p = random_params(3, 2, 1.0, rng);
                   const auto d = energymodel::boltzmann_distribution(p, 1.0);
                   const std::size_t ground = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
                   // Monotone on the grid; the last rung must be within 1e-6 of 1.
                   double prev = 0.0;
                   double violations = 0.0;
                   for (int i = 0; i <= 40; ++i) {
                     const double beta = std::pow(10.0, -1.0 + 3.0 * i / 40.0);
                     const double g = energymodel::boltzmann_distribution(p, beta)[ground];
                     if (g < prev) violations += 1.0;
                     prev = g;
                   }
                   if (!(1.0 - prev < 1e-6)) violations += 1.0;
                   return make_check("energymodel.ground_state_limit", violations, "<=", 0.0);
                 }});
  out.push_back({"energymodel.gibbs_tv", [](std::uint64_t seed) {
                   return make_check("energymodel.gibbs_tv", gibbs_tv_distance(seed, 1000000), "<", 0.02);
                 }});
  out.push_back({"energymodel.markov_stationary", [](std::uint64_t seed) {
                   const std::vector<double> t{0.2, 0.5, 0.3, 0.1, 0.1, 0.8, 0.6, 0.3, 0.1};
                   const energymodel::TransitionMatrix tm(3, t);
                   const auto traj = energymodel::markov_chain_run(tm, 0, 100000, seed);
                   const auto occ = energymodel::occupancy(traj, 3);
                   const auto pi = oracle::stationary_distribution(t, 3);
                   return make_check("energymodel.markov_stationary", energymodel::total_variation(occ, pi), "<", 0.02);
                 }});
  out.push_back({"energymodel.tempering_both_modes", [](std::uint64_t seed) {
                   const auto s = tempering_study(seed);
                   return make_check("energymodel.tempering_both_modes", std::min(s.tempered_mass_a, s.tempered_mass_b),
                                     ">", 0.2);
                 }});
  out.push_back({"energymodel.plain_chain_stuck", [](std::uint64_t seed) {
                   return make_check("energymodel.plain_chain_stuck", tempering_study(seed).plain_mass_b, "<", 0.05);
                 }});
  out.push_back({"energymodel.anneal_absorbs", [](std::uint64_t seed) {
                   Rng rng(seed, 411);
                   const auto p = random_params(4, 3, 1.0, rng);
                   const double ladder[] = {1.0, 2.0, 5.0, 20.0, 1000.0};
                   energymodel::ScheduleOptions opts;
                   opts.sweeps_per_rung = 200;
                   opts.return_to_unit = false;
                   const auto run = energymodel::anneal_sample(p, ladder, random_config(4, 3, rng), seed, 0, opts);
                   double rises = 0.0;
                   for (std::size_t s = run.trace.size() - opts.sweeps_per_rung + 1; s < run.trace.size(); ++s) {
                     if (run.trace[s].energy > run.trace[s - 1].energy) rises += 1.0;
                   }
                   return make_check("energymodel.anneal_absorbs", rises, "<=", 0.0);
                 }});
}

void add_optim_checks(std::vector<Check>& out) {
  out.push_back({"optim.block_linearity", [](std::uint64_t seed) {
                   Rng rng(seed, 500);
                   std::vector<double> a(7);
                   std::vector<double> b(5);
                   for (auto& x : a) x = rng.normal();
                   for (auto& x : b) x = rng.normal();
                   std::vector<double> ab(a);
                   ab.insert(ab.end(), b.begin(), b.end());
                   auto sa = optim::MomentumState::create(7, 0.8, 0.03);
                   auto sb = optim::MomentumState::create(5, 0.8, 0.03);
                   auto sab = optim::MomentumState::create(12, 0.8, 0.03);
                   for (int t = 0; t < 50; ++t) {
                     std::vector<double> g(12);
                     for (auto& x : g) x = rng.normal();
                     optim::momentum_step(sa, a, std::span(g).first(7));
                     optim::momentum_step(sb, b, std::span(g).subspan(7));
                     optim::momentum_step(sab, ab, g);
                   }
                   double mismatches = 0.0;
                   for (std::size_t i = 0; i < 12; ++i) mismatches += ab[i] == (i < 7 ? a[i] : b[i - 7]) ? 0 : 1;
                   return make_check("optim.block_linearity", mismatches, "<=", 0.0);
                 }});
  out.push_back({"optim.alpha0_matches_gd", [](std::uint64_t seed) {
                   Rng rng(seed, 501);
                   std::vector<double> x(10);
                   for (auto& v : x) v = rng.normal();
                   std::vector<double> y(x);
                   auto s = optim::MomentumState::create(10, 0.0, 0.07);
                   for (int t = 0; t < 100; ++t) {
                     std::vector<double> g(10);
                     for (auto& v : g) v = rng.normal();
                     optim::momentum_step(s, x, g);
                     optim::gd_step(y, g, 0.07);
                   }
                   return make_check("optim.alpha0_matches_gd", x == y ? 0.0 : 1.0, "<=", 0.0);
                 }});
  out.push_back({"optim.momentum_bounded", [](std::uint64_t) {
                   // Every step below the plain-GD stability limit 2/L, alpha up to 0.9.
                   const auto f = optim::diagonal_quadratic({1.0, 100.0});
                   double worst = 0.0;
                   for (double alpha : {0.0, 0.5, 0.9}) {
                     for (int i = 1; i <= 19; ++i) {
                       const double eps = 0.001 * i;
                       auto s = optim::MomentumState::create(2, alpha, eps);
                       std::vector<double> th{10.0, 1.0};
                       std::vector<double> g(2);
                       for (int t = 0; t < 5000; ++t) {
                         f.gradient(th, g);
                         optim::momentum_step(s, th, g);
                         worst = std::max({worst, std::abs(th[0]) / 10.0, std::abs(th[1]) / 10.0});
                       }
                     }
                   }
                   // Largest excursion relative to the starting sup-norm.
                   return make_check("optim.momentum_bounded", worst, "<=", 10.0);
                 }});
  out.push_back({"optim.momentum_beats_gd", [](std::uint64_t) {
                   const auto b = momentum_vs_gd();
                   return make_check("optim.momentum_beats_gd", static_cast<double>(b.momentum_iterations), "<",
                                     static_cast<double>(b.best_gd_iterations));
                 }});
  out.push_back({"optim.velocity_decay_exact", [](std::uint64_t seed) {
                   // alpha = 1/2 scales by a power of two, so v_t = alpha^t v_0 exactly.
                   Rng rng(seed, 502);
                   auto s = optim::MomentumState::create(6, 0.5, 0.1);
                   for (auto& v : s.velocity) v = rng.normal();
                   const auto v0 = s.velocity;
                   std::vector<double> th(6, 0.0);
                   const std::vector<double> g(6, 0.0);
                   double mismatches = 0.0;
                   for (int t = 1; t <= 60; ++t) {
                     optim::momentum_step(s, th, g);
                     for (std::size_t i = 0; i < 6; ++i) mismatches += s.velocity[i] == std::ldexp(v0[i], -t) ? 0 : 1;
                   }
                   return make_check("optim.velocity_decay_exact", mismatches, "<=", 0.0);
                 }});
  out.push_back({"optim.velocity_decay", [](std::uint64_t seed) {
                   // alpha = 0.9: one rounding per step against the closed form.
                   Rng rng(seed, 503);
                   auto s = optim::MomentumState::create(6, 0.9, 0.1);
                   for (auto& v : s.velocity) v = rng.normal();
                   const auto v0 = s.velocity;
                   std::vector<double> th(6, 0.0);
                   const std::vector<double> g(6, 0.0);
                   double worst = 0.0;
                   for (int t = 1; t <= 60; ++t) {
                     optim::momentum_step(s, th, g);
                     for (std::size_t i = 0; i < 6; ++i) {
                       worst = std::max(worst, std::abs(s.velocity[i] / (std::pow(0.9, t) * v0[i]) - 1.0));
                     }
                   }
                   return make_check("optim.velocity_decay", worst, "<=", 1e-13);
                 }});
}

}  // namespace detail
}  // namespace scatternet::harness
