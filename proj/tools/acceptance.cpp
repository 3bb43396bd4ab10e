// Copyright 2026 The pbmarl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Acceptance driver: prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <spdlog/cfg/helpers.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "pbmarl/evaluation/exploitability.hpp"
#include "pbmarl/game/expectation.hpp"
#include "pbmarl/game/games.hpp"
#include "pbmarl/metagame/meta_solvers.hpp"
#include "pbmarl/runtime/bench.hpp"
#include "pbmarl/runtime/coordinator.hpp"

namespace fs = std::filesystem;

namespace pbmarl {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Action marginal of an agent's meta-strategy in a one-shot matrix game.
std::vector<double> action_marginal(const MetaStrategy& meta, const std::vector<PolicyPool>& pools,
                                    int agent, int num_actions) {
  std::vector<double> out(num_actions, 0.0);
  std::vector<Action> legal(num_actions);
  for (int a = 0; a < num_actions; ++a) legal[a] = a;
  const std::string key = std::to_string(agent) + "|||";
  const AgentDistribution& d = meta.agents[agent];
  for (std::size_t k = 0; k < d.policy_ids.size(); ++k) {
    const auto probs = pools[agent].get(d.policy_ids[k])->action_probabilities(key, legal);
    for (int a = 0; a < num_actions; ++a) out[a] += d.probs[k] * probs[a];
  }
  return out;
}

ExperimentConfig exact_matrix_config(const MatrixGameDefinition& def) {
  ExperimentConfig cfg;
  cfg.game = {{"name", "matrix"}, {"shape", def.shape}, {"payoffs", def.payoffs}};
  cfg.runtime.executor = "inline";
  cfg.runtime.task_log = true;
  cfg.simulation.mode = SimulationMode::kExact;
  cfg.algorithm.bootstrap = "first_action";
  cfg.meta_solver.name = "zero_sum_lp";
  return cfg;
}

Outcome criterion_double_oracle() {
  const auto start = Clock::now();
  Outcome o{true, ""};
  for (const MatrixGameDefinition& def : {rock_paper_scissors(), matching_pennies()}) {
    const int n = def.shape[0];
    Coordinator c(exact_matrix_config(def));
    const RunSummary s = c.run();
    double linf = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (double p : action_marginal(s.final_meta, c.pools(), i, n)) {
        linf = std::max(linf, std::abs(p - 1.0 / n));
      }
    }
    const bool ok = s.stop_reason == "converged" && s.final_exploitability <= 1e-6 &&
                    s.iterations <= n + 1 && linf <= 1e-6;
    o.pass = o.pass && ok;
    o.detail += fmt::format("{}: {} after {} iterations (limit {}), exploitability {:.2e}, "
                            "L-inf to uniform {:.2e}; ",
                            def.name, s.stop_reason, s.iterations, n + 1,
                            s.final_exploitability, linf);
  }
  const double t = seconds_since(start);
  o.pass = o.pass && t < 5.0;
  o.detail += fmt::format("{:.2f}s (limit 5s)", t);
  return o;
}

ExperimentConfig kuhn_curve_config() {
  ExperimentConfig cfg;
  cfg.seed = 1;
  cfg.game = {{"name", "kuhn_poker"}};
  cfg.runtime.executor = "inline";
  cfg.simulation.mode = SimulationMode::kExact;
  cfg.meta_solver.name = "fictitious_play";
  cfg.meta_solver.fictitious_play_iterations = 100000;
  cfg.algorithm.max_iterations = 15;
  return cfg;
}

Outcome criterion_kuhn_curve() {
  const auto start = Clock::now();
  Coordinator c(kuhn_curve_config());
  const RunSummary s = c.run();
  const double t = seconds_since(start);
  std::vector<double> curve;
  for (const MetricsRow& r : c.rows()) curve.push_back(r.exploitability);
  bool monotone = true;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    monotone = monotone && curve[k] <= curve[k - 1] + 0.02;
  }
  const bool reached = !curve.empty() && curve.back() < 0.05;
  std::string trace;
  for (double v : curve) trace += fmt::format("{:.3f} ", v);
  return {reached && monotone && t < 120.0 && s.stop_reason != "failure",
          fmt::format("stop {} after {} iterations; curve [{}]; final {:.4f} (< 0.05), "
                      "nonincreasing within 0.02: {}; {:.1f}s (limit 120s)",
                      s.stop_reason, s.iterations, trace, curve.empty() ? -1.0 : curve.back(),
                      monotone ? "yes" : "no", t)};
}

// Population size at which the target is first met, or -1.
int population_to_target(const std::string& algorithm, const std::string& solver,
                         std::uint64_t seed, const std::string& metric, int max_iterations) {
  ExperimentConfig cfg;
  cfg.seed = seed;
  cfg.game = {{"name", "kuhn_poker"}};
  cfg.algorithm.name = algorithm;
  cfg.algorithm.max_iterations = max_iterations;
  cfg.algorithm.check_convergence = false;
  cfg.meta_solver.name = solver;
  cfg.oracle.name = "q_learning";
  cfg.oracle.q_learning.episodes = 50000;
  cfg.simulation.episodes = 2000;
  cfg.runtime.executor = "inline";
  cfg.runtime.num_actors = 1;
  cfg.stoppers.target_exploitability = 0.5;
  cfg.stoppers.target_metric = metric;
  Coordinator c(cfg);
  const RunSummary s = c.run();
  if (s.stop_reason != "target_reached") return -1;
  return c.rows().back().pool_size.front();
}

double median_population(std::vector<int> sizes, int cap) {
  for (int& s : sizes) {
    if (s < 0) s = cap + 1;  // not reached: ranks above every reached size
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes[sizes.size() / 2];
}

struct MethodResult {
  std::string name;
  std::vector<int> sizes;
  double median = 0.0;
};

std::vector<MethodResult> method_medians(const std::string& metric, int max_iterations) {
  const std::vector<std::pair<std::string, std::pair<std::string, std::string>>> methods = {
      {"PSRO(alpha-rank)", {"psro", "alpha_rank"}},
      {"PSRO(fictitious play)", {"psro", "fictitious_play"}},
      {"FSP", {"fsp", "uniform"}}};  // FSP ignores the solver
  std::vector<MethodResult> out;
  for (const auto& [name, spec] : methods) {
    MethodResult m{name, {}, 0.0};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      m.sizes.push_back(population_to_target(spec.first, spec.second, seed, metric,
                                             max_iterations));
    }
    m.median = median_population(m.sizes, max_iterations + 1);
    out.push_back(std::move(m));
  }
  return out;
}

std::string describe(const std::vector<MethodResult>& results) {
  std::string s;
  for (const MethodResult& m : results) {
    std::string sizes;
    for (int v : m.sizes) sizes += v < 0 ? "- " : fmt::format("{} ", v);
    s += fmt::format("{} median {} [{}]; ", m.name, m.median, sizes);
  }
  return s;
}

// Self-play cycling on rock-paper-scissors as a repeated matrix game.
std::string self_play_cycle(bool* fails_target, bool* oscillates) {
  ExperimentConfig cfg;
  cfg.seed = 1;
  cfg.game = {{"name", "rock_paper_scissors"}};
  cfg.algorithm.name = "sp";
  cfg.algorithm.bootstrap = "first_action";
  cfg.algorithm.max_iterations = 30;
  cfg.algorithm.check_convergence = false;
  cfg.oracle.name = "q_learning";
  cfg.oracle.q_learning.episodes = 5000;
  cfg.runtime.executor = "inline";
  cfg.runtime.num_actors = 1;
  Coordinator c(cfg);
  c.run();
  *fails_target = true;
  for (const MetricsRow& r : c.rows()) *fails_target = *fails_target && r.exploitability > 0.5;
  // The meta-strategy is a point mass on the newest policy; follow the
  // action that policy plays.
  const std::vector<Action> legal = {0, 1, 2};
  std::string actions;
  int changes = 0;
  const PolicyPool& pool = c.pools()[0];
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const auto probs = pool.at(k)->action_probabilities("0|||", legal);
    const int a = static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
    actions += "RPS"[a];
    if (k > 0 && actions[k] != actions[k - 1]) ++changes;
  }
  const std::set<char> distinct(actions.begin(), actions.end());
  *oscillates = distinct.size() == 3 && changes >= static_cast<int>(pool.size()) / 2;
  return fmt::format("SP on RPS: {} rows, exploitability {}, support sequence {}",
                     c.rows().size(), *fails_target ? "never <= 0.5" : "reached 0.5", actions);
}

Outcome criterion_method_ordering() {
  const auto start = Clock::now();
  const std::vector<MethodResult> normalized = method_medians("exploitability", 30);
  std::vector<PolicyPool> uniform_pools;
  for (int i = 0; i < 2; ++i) {
    uniform_pools.emplace_back(i);
    uniform_pools.back().extend(TabularPolicy(uniform_pools.back().next_policy_id()));
  }
  const double bootstrap = exploitability(*make_kuhn_poker(),
                                          uniform_meta_strategy(uniform_pools), uniform_pools)
                               .exploitability;
  const bool ordered = normalized[0].median <= normalized[1].median &&
                       normalized[1].median <= normalized[2].median;
  bool sp_fails = false;
  bool sp_oscillates = false;
  const std::string sp = self_play_cycle(&sp_fails, &sp_oscillates);
  const double t = seconds_since(start);
  return {ordered && sp_fails && sp_oscillates && t < 1800.0,
          fmt::format("target exploitability 0.5 (already met by the uniform bootstrap at "
                      "{:.3f}, so the ordering holds trivially): {}ordering holds: {}; {} "
                      "(cycling: {}); {:.0f}s (limit 1800s)",
                      bootstrap, describe(normalized), ordered ? "yes" : "no", sp,
                      sp_oscillates ? "yes" : "no", t)};
}

// Informational: the same ordering with the target applied to raw NashConv.
std::string method_ordering_nash_conv() {
  const std::vector<MethodResult> raw = method_medians("nash_conv", 30);
  const bool ordered = raw[0].median <= raw[1].median && raw[1].median <= raw[2].median;
  return fmt::format("target NashConv 0.5: {}ordering holds: {}", describe(raw),
                     ordered ? "yes" : "no");
}

// Exploitability of a mixed profile in a two-player zero-sum matrix game by
// enumerating every pure deviation.
double brute_force_exploitability(const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y) {
  double value = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) value += x[i] * y[j] * a(i, j);
  }
  double best_row = -1e300;
  for (int i = 0; i < a.rows(); ++i) {
    double v = 0.0;
    for (int j = 0; j < a.cols(); ++j) v += y[j] * a(i, j);
    best_row = std::max(best_row, v);
  }
  double best_col = -1e300;
  for (int j = 0; j < a.cols(); ++j) {
    double v = 0.0;
    for (int i = 0; i < a.rows(); ++i) v -= x[i] * a(i, j);
    best_col = std::max(best_col, v);
  }
  return ((best_row - value) + (best_col + value)) / 2.0;
}

Outcome criterion_meta_solvers() {
  const auto start = Clock::now();
  Outcome o{true, ""};
  std::mt19937_64 rng(derive_seed(4, "acceptance/meta"));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int g = 0; g < 5; ++g) {
    Eigen::MatrixXd a(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) a(i, j) = u(rng);
    }
    const MetaGame game = MetaGame::from_matrices(a, -a);
    const StrategyProfile fp = fictitious_play(game, 100000);
    const double e = brute_force_exploitability(a, fp[0], fp[1]);
    const double reference = meta_nash_conv(game, fp) / 2.0;
    worst = std::max(worst, e);
    o.pass = o.pass && e <= 0.02 && std::abs(e - reference) < 1e-9;
  }
  o.detail += fmt::format("fictitious play worst exploitability over 5 random 4x4 games {:.4f} "
                          "(limit 0.02); ",
                          worst);
  const MatrixGameDefinition rps = rock_paper_scissors();
  Eigen::MatrixXd ra(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) ra(i, j) = rps.payoffs[0][i * 3 + j];
  }
  const AlphaRankResult ar = alpha_rank(MetaGame::from_matrices(ra, -ra));
  const Eigen::VectorXd drift =
      (ar.stationary.transpose() * ar.transition).transpose() - ar.stationary;
  const double residual = drift.cwiseAbs().maxCoeff();
  double linf = 0.0;
  for (const Eigen::VectorXd& m : ar.marginals) {
    linf = std::max(linf, (m.array() - 1.0 / 3.0).abs().maxCoeff());
  }
  o.pass = o.pass && residual <= 1e-8 && linf <= 1e-6;
  const double t = seconds_since(start);
  o.pass = o.pass && t < 30.0;
  o.detail += fmt::format("alpha-rank on RPS: |pi^T T - pi^T| {:.1e} (limit 1e-8), "
                          "L-inf to uniform {:.1e} (limit 1e-6); {:.2f}s (limit 30s)",
                          residual, linf, t);
  return o;
}

Outcome criterion_runtime_services() {
  const auto start = Clock::now();
  std::vector<std::string> problems;

  // Parameter server: 8 workers, 10^4 operations.
  ParameterServer ps;
  const std::vector<PolicyId> ids = {"a", "b", "c", "d"};
  auto blob = [](const PolicyId& id, std::uint64_t v) {
    TabularPolicy p(id, true, v);
    p.set("k", {1.0});
    return serialize_parameters(p);
  };
  for (const auto& id : ids) ps.push(id, blob(id, 1), 1);
  std::atomic<int> violations{0};
  std::vector<std::thread> threads;
  for (int w = 0; w < 8; ++w) {
    threads.emplace_back([&, w] {
      Rng rng(derive_seed(5, "acceptance/ps/" + std::to_string(w)));
      std::map<PolicyId, std::uint64_t> seen;
      for (int op = 0; op < 1250; ++op) {
        const PolicyId& id = ids[rng() % ids.size()];
        if (rng() % 2 == 0) {
          const std::uint64_t v = ps.version(id) + 1;
          try {
            ps.push(id, blob(id, v), v);
          } catch (const InvalidArgument&) {
          }
        } else {
          const VersionedBlob vb = ps.pull(id);
          if (vb.version < seen[id] || deserialize_parameters(*vb.blob).version() != vb.version) {
            ++violations;
          }
          seen[id] = vb.version;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  std::map<PolicyId, std::uint64_t> last;
  for (const ParameterAuditEntry& e : ps.audit_log()) {
    if (e.op != ParameterAuditEntry::Op::kPush) continue;
    if (e.version <= last[e.policy_id]) ++violations;
    last[e.policy_id] = e.version;
  }
  for (const auto& id : ids) {
    if (ps.version(id) != last[id]) ++violations;
  }
  if (violations > 0) problems.push_back(fmt::format("{} parameter-server violations", violations.load()));

  // Dataset server: FIFO eviction and sampling with replacement.
  DatasetServer ds(100);
  SampleBatch batch;
  for (int i = 0; i < 250; ++i) {
    batch.push_back({"0|" + std::to_string(i) + "||", 0, double(i), "", true, 0, 0, 1, 0});
  }
  ds.append(0, batch);
  const auto kept = ds.contents(0);
  bool fifo = kept.size() == 100;
  for (std::size_t k = 0; fifo && k < kept.size(); ++k) fifo = kept[k].reward == 150.0 + k;
  Rng rng(7);
  const SampleBatch s = ds.sample(0, 1000, rng);
  std::set<double> distinct(s.reward.begin(), s.reward.end());
  const bool sampling = s.rows() == 1000 && *distinct.begin() >= 150.0 && distinct.size() < 1000;
  if (!fifo) problems.push_back("FIFO eviction order broken");
  if (!sampling) problems.push_back("sampling outside the window or without replacement");

  // Task conservation over a full run, audited from the dispatcher log.
  ExperimentConfig cfg = kuhn_curve_config();
  cfg.runtime.executor = "threads";
  cfg.runtime.task_log = true;
  cfg.simulation.mode = SimulationMode::kMonteCarlo;
  cfg.simulation.episodes = 500;
  cfg.algorithm.max_iterations = 4;
  const RunSummary run = coordinator_run(cfg);
  if (!run.task_audit.empty()) problems.push_back("task audit: " + run.task_audit);
  if (!run.parameter_audit_ok) problems.push_back("push after freeze");
  if (run.stop_reason == "failure") problems.push_back("run failed: " + run.error);

  const double t = seconds_since(start);
  std::string detail = fmt::format(
      "8-worker stress 10^4 ops: {} violations; FIFO: {}; with-replacement sampling: {}; "
      "PSRO run tasks submitted {} dispatched {} completed {} failed {} in flight {}, "
      "audit {}; {:.1f}s (limit 60s)",
      violations.load(), fifo ? "ok" : "broken", sampling ? "ok" : "broken",
      run.tasks.submitted, run.tasks.dispatched, run.tasks.completed, run.tasks.failed,
      run.tasks.in_flight, run.task_audit.empty() ? "clean" : run.task_audit, t);
  for (const std::string& p : problems) detail += "; " + p;
  return {problems.empty() && t < 60.0, detail};
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

Outcome criterion_determinism(const fs::path& scratch) {
  std::vector<std::string> files;
  for (int k = 0; k < 2; ++k) {
    const fs::path path = scratch / fmt::format("determinism_{}.jsonl", k);
    {
      MetricsSink sink(path.string());
      coordinator_run(kuhn_curve_config(), &sink);
    }
    files.push_back(read_bytes(path));
  }
  ExperimentConfig mc = kuhn_curve_config();
  mc.simulation.mode = SimulationMode::kMonteCarlo;
  mc.algorithm.max_iterations = 5;
  std::vector<std::string> mc_files;
  for (int k = 0; k < 2; ++k) {
    const fs::path path = scratch / fmt::format("determinism_mc_{}.jsonl", k);
    {
      MetricsSink sink(path.string());
      coordinator_run(mc, &sink);
    }
    mc_files.push_back(read_bytes(path));
  }
  const bool same = !files[0].empty() && files[0] == files[1];
  const bool same_mc = !mc_files[0].empty() && mc_files[0] == mc_files[1];
  return {same && same_mc,
          fmt::format("exact-simulation config: {} bytes, identical: {}; Monte-Carlo variant: {} "
                      "bytes, identical: {}",
                      files[0].size(), same ? "yes" : "no", mc_files[0].size(),
                      same_mc ? "yes" : "no")};
}

Outcome criterion_throughput() {
  const unsigned hw = std::thread::hardware_concurrency();
  BenchConfig cfg;
  cfg.worker_counts = {1, 2, 4};
  cfg.window_s = 5.0;
  const std::vector<BenchRow> rows = run_throughput_bench(cfg);
  const double s1 = rows[0].steps_per_second;
  const double s2 = rows[1].steps_per_second;
  const double s4 = rows[2].steps_per_second;
  const bool scaled = s4 >= 1.5 * s1 && s4 >= 0.9 * s2;
  std::string detail = fmt::format(
      "steps/s at 1/2/4 actors: {:.0f} / {:.0f} / {:.0f}; 4-vs-1 ratio {:.2f} (need 1.5), "
      "4-vs-2 ratio {:.2f} (need 0.9)",
      s1, s2, s4, s4 / s1, s2 > 0 ? s4 / s2 : 0.0);
  if (hw < 8) {
    return {false, fmt::format("not attainable on this host: {} hardware thread(s), criterion "
                               "needs >= 8; {}",
                               hw, detail)};
  }
  return {scaled, detail};
}

Outcome criterion_monte_carlo_agreement() {
  auto game = make_kuhn_poker();
  std::mt19937_64 rng(derive_seed(8, "acceptance/kuhn"));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<std::vector<std::string>> keys = {
      {"", "pb"}, {"p", "b"}};  // histories at which each player acts
  double worst = 0.0;
  int agree = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PolicyPool> pools;
    for (int i = 0; i < 2; ++i) {
      PolicyPool pool(i);
      TabularPolicy p(pool.next_policy_id());
      for (const char* card : {"J", "Q", "K"}) {
        for (const std::string& h : keys[i]) {
          const double x = u(rng);
          p.set(std::to_string(i) + "|" + card + "||" + h, {x, 1.0 - x});
        }
      }
      pool.extend(std::move(p));
      pools.push_back(std::move(pool));
    }
    const PoolSnapshot snap = std::make_shared<const std::vector<PolicyPool>>(pools);
    SimulationTask task;
    task.combination.policy_ids = {pools[0].id_at(0), pools[1].id_at(0)};
    task.num_episodes = 2000;
    task.mode = SimulationMode::kMonteCarlo;
    RolloutWorker worker(game, 8, nullptr, nullptr);
    const EvaluationReport mc =
        worker.simulate(task, derive_seed(8, "acceptance/kuhn/" + std::to_string(trial)), snap);
    const BehaviorPolicy* joint[] = {pools[0].at(0).get(), pools[1].at(0).get()};
    const std::vector<double> exact = expected_returns(*game, pure_joint(joint));
    bool ok = true;
    for (int i = 0; i < 2; ++i) {
      const double se = std::sqrt(mc.return_variances[i] / mc.episodes);
      const double z = std::abs(mc.mean_returns[i] - exact[i]) / se;
      worst = std::max(worst, z);
      ok = ok && z <= 4.0;
    }
    agree += ok;
  }
  return {agree == 20, fmt::format("{}/20 combinations within 4 standard errors at 2000 "
                                   "episodes; largest deviation {:.2f} SE",
                                   agree, worst)};
}

}  // namespace
}  // namespace pbmarl

int main(int argc, char** argv) {
  using namespace pbmarl;
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("PBMARL_LOG")) spdlog::cfg::helpers::load_levels(level);

  CLI::App app{"Acceptance checks"};
  std::vector<int> only;
  bool informational = false;
  std::string scratch = (fs::temp_directory_path() / "pbmarl_acceptance").string();
  app.add_option("--only", only, "Criteria to run (default: all)")->delimiter(',');
  app.add_flag("--informational", informational,
               "Also report method ordering with the target on raw NashConv");
  app.add_option("--scratch", scratch, "Directory for temporary files");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"double-oracle exactness", criterion_double_oracle},
      {"Kuhn poker exploitability curve", criterion_kuhn_curve},
      {"method ordering by population size", criterion_method_ordering},
      {"meta-solver correctness", criterion_meta_solvers},
      {"runtime services", criterion_runtime_services},
      {"determinism", [&] { return criterion_determinism(scratch); }},
      {"throughput scaling", criterion_throughput},
      {"Monte-Carlo / exact agreement", criterion_monte_carlo_agreement},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int number = static_cast<int>(k) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << fmt::format("criterion {} [{}] {}: {}", number, o.pass ? "PASS" : "FAIL",
                             criteria[k].first, o.detail)
              << std::endl;
  }
  if (informational) {
    std::cout << "info: " << method_ordering_nash_conv() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
