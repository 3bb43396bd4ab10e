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


#include <atomic>
#include <filesystem>
#include <set>
#include <thread>

#include "gtest/gtest.h"
#include "pbmarl/game/games.hpp"
#include "pbmarl/runtime/config.hpp"
#include "pbmarl/runtime/coordinator.hpp"

namespace pbmarl {
namespace {

ParameterBlob blob_with_version(const PolicyId& id, std::uint64_t version) {
  TabularPolicy p(id, true, version);
  p.set("k", {1.0});
  return serialize_parameters(p);
}

TEST(ParameterServerTest, VersionsStrictlyIncrease) {
  ParameterServer ps;
  EXPECT_THROW(ps.pull("p"), NotFound);
  ps.push("p", blob_with_version("p", 1), 1);
  ps.push("p", blob_with_version("p", 3), 3);
  EXPECT_THROW(ps.push("p", blob_with_version("p", 3), 3), InvalidArgument);
  EXPECT_THROW(ps.push("p", blob_with_version("p", 2), 2), InvalidArgument);
  EXPECT_EQ(ps.pull("p").version, 3u);
  EXPECT_EQ(deserialize_parameters(*ps.pull("p").blob).version(), 3u);
  ps.freeze("p");
  EXPECT_THROW(ps.push("p", blob_with_version("p", 4), 4), InvalidArgument);
  EXPECT_THROW(ps.freeze("q"), NotFound);
  EXPECT_TRUE(audit_no_push_after_freeze(ps.audit_log()));
}

TEST(ParameterServerTest, EightWorkerStress) {
  ParameterServer ps;
  const std::vector<PolicyId> ids = {"a", "b", "c", "d"};
  for (const auto& id : ids) ps.push(id, blob_with_version(id, 1), 1);
  std::atomic<int> violations{0};
  std::atomic<int> accepted{0};
  std::vector<std::thread> threads;
  for (int w = 0; w < 8; ++w) {
    threads.emplace_back([&, w] {
      Rng rng(derive_seed(5, "stress/" + std::to_string(w)));
      std::map<PolicyId, std::uint64_t> seen;
      for (int op = 0; op < 1250; ++op) {
        const PolicyId& id = ids[rng() % ids.size()];
        if (rng() % 2 == 0) {
          const std::uint64_t v = ps.version(id) + 1 + rng() % 2;
          try {
            ps.push(id, blob_with_version(id, v), v);
            ++accepted;
          } catch (const InvalidArgument&) {
            // Lost the race against a newer push: latest wins.
          }
        } else {
          const VersionedBlob vb = ps.pull(id);
          if (vb.version < seen[id]) ++violations;
          if (deserialize_parameters(*vb.blob).version() != vb.version) ++violations;
          seen[id] = vb.version;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(violations.load(), 0);
  EXPECT_GT(accepted.load(), 0);
  std::map<PolicyId, std::uint64_t> last;
  for (const ParameterAuditEntry& e : ps.audit_log()) {
    if (e.op != ParameterAuditEntry::Op::kPush) continue;
    EXPECT_GT(e.version, last[e.policy_id]);
    last[e.policy_id] = e.version;
  }
  for (const auto& id : ids) EXPECT_EQ(ps.version(id), last[id]);
}

TEST(ParameterServerTest, DisjointPushersAndPullers) {
  ParameterServer ps;
  for (int k = 0; k < 4; ++k) {
    const PolicyId id = "p" + std::to_string(k);
    ps.push(id, blob_with_version(id, 1), 1);
  }
  std::atomic<int> violations{0};
  std::vector<std::thread> threads;
  for (int k = 0; k < 4; ++k) {
    threads.emplace_back([&ps, k] {
      const PolicyId id = "p" + std::to_string(k);
      for (std::uint64_t v = 2; v <= 500; ++v) ps.push(id, blob_with_version(id, v), v);
    });
    threads.emplace_back([&ps, &violations, k] {
      const PolicyId id = "p" + std::to_string(k);
      std::uint64_t previous = 0;
      for (int i = 0; i < 500; ++i) {
        const VersionedBlob vb = ps.pull(id);
        const TabularPolicy p = deserialize_parameters(*vb.blob);
        if (p.id() != id || p.version() != vb.version || vb.version < previous) ++violations;
        previous = vb.version;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(violations.load(), 0);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(ps.version("p" + std::to_string(k)), 500u);
}

Transition row(int agent, int tag) {
  return {std::to_string(agent) + "|" + std::to_string(tag) + "||", 0, double(tag), "", true,
          agent, 0, 1, 0};
}

TEST(DatasetServerTest, FifoEvictionAndSampling) {
  DatasetServer ds(3, 2);
  Rng rng(1);
  EXPECT_THROW(ds.sample(0, 1, rng), Starvation);
  SampleBatch batch;
  for (int i = 0; i < 5; ++i) batch.push_back(row(0, i));
  ds.append(0, batch);
  EXPECT_EQ(ds.size(0), 3u);
  EXPECT_EQ(ds.insertions(0), 5u);
  const std::vector<Transition> kept = ds.contents(0);
  ASSERT_EQ(kept.size(), 3u);
  EXPECT_EQ(kept[0], row(0, 2));
  EXPECT_EQ(kept[2], row(0, 4));
  // With replacement: more rows than stored, every row from the buffer.
  const SampleBatch s = ds.sample(0, 300, rng);
  ASSERT_EQ(s.rows(), 300u);
  std::map<double, int> counts;
  for (double r : s.reward) ++counts[r];
  EXPECT_EQ(counts.size(), 3u);
  for (const auto& [reward, n] : counts) {
    EXPECT_GE(reward, 2.0);
    EXPECT_GT(n, 60);
  }
  EXPECT_THROW(ds.sample(0, 0, rng), InvalidArgument);
  EXPECT_THROW(ds.sample(1, 1, rng), Starvation);
  ds.clear(0);
  EXPECT_EQ(ds.size(0), 0u);
}

TEST(DatasetServerTest, CapacityTwoKeepsNewest) {
  DatasetServer ds(2);
  Rng rng(3);
  EXPECT_THROW(ds.sample(0, 1, rng), Starvation);
  SampleBatch batch;
  for (int i = 1; i <= 3; ++i) batch.push_back(row(0, i));
  ds.append(0, batch);
  EXPECT_EQ(ds.contents(0), (std::vector<Transition>{row(0, 2), row(0, 3)}));
  const SampleBatch s = ds.sample(0, 5, rng);
  ASSERT_EQ(s.rows(), 5u);
  for (double r : s.reward) EXPECT_TRUE(r == 2.0 || r == 3.0);
}

TEST(DatasetServerTest, RejectsMalformedBatch) {
  DatasetServer ds(10);
  SampleBatch bad;
  bad.push_back(row(0, 1));
  bad.reward.push_back(1.0);
  EXPECT_THROW(ds.append(0, bad), InvalidArgument);
}

TEST(DispatcherTest, RoutingAndErrors) {
  Dispatcher d(true);
  d.register_worker("actor_0", WorkerRole::kActor);
  EXPECT_THROW(d.register_worker("learner", WorkerRole::kLearner), InvalidArgument);
  TaskDescriptor training;
  training.kind = TaskKind::kTraining;
  training.payload = TrainingPayload{};
  EXPECT_THROW(d.submit(training), InvalidArgument);
  EXPECT_THROW(d.request_task("ghost", std::nullopt, false), NotFound);
  TaskDescriptor roll;
  roll.kind = TaskKind::kRollout;
  roll.payload = RolloutPayload{};
  const TaskId id = d.submit(roll);
  EXPECT_EQ(d.request_task("actor_0", std::nullopt, false).task_id, id);
  EXPECT_EQ(d.request_task("actor_0", std::nullopt, false).kind, TaskKind::kWait);
  CompletionReport done{id, "actor_0", true, "", {}};
  d.request_task("actor_0", done, false);
  EXPECT_THROW(d.request_task("actor_0", done, false), InvalidArgument);
  EXPECT_EQ(d.poll_completion()->task_id, id);
  d.shutdown();
  EXPECT_EQ(d.request_task("actor_0", std::nullopt, true).kind, TaskKind::kTerminate);
  EXPECT_THROW(d.submit(roll), RuntimeFailure);
  EXPECT_EQ(audit_task_log(d.log(), d.counters()), "");
}

TEST(DispatcherTest, ConcurrentWorkersConserveTasks) {
  Dispatcher d(true);
  constexpr int kWorkers = 8;
  for (int w = 0; w < kWorkers; ++w) {
    d.register_worker("actor_" + std::to_string(w), WorkerRole::kActor);
  }
  std::vector<std::vector<TaskId>> received(kWorkers);
  std::vector<std::thread> threads;
  for (int w = 0; w < kWorkers; ++w) {
    threads.emplace_back([&d, &received, w] {
      const std::string id = "actor_" + std::to_string(w);
      std::optional<CompletionReport> last;
      while (true) {
        TaskDescriptor t = d.request_task(id, std::move(last), true);
        last.reset();
        if (t.kind == TaskKind::kTerminate) return;
        received[w].push_back(t.task_id);
        last = CompletionReport{t.task_id, id, t.task_id % 7 != 0, "", {}};
      }
    });
  }
  const int n = 10000;
  std::set<TaskId> submitted;
  for (int i = 0; i < n; ++i) {
    TaskDescriptor t;
    t.kind = TaskKind::kSimulation;
    t.payload = SimulationPayload{};
    submitted.insert(d.submit(t));
  }
  std::set<TaskId> finished;
  for (int i = 0; i < n; ++i) {
    const CompletionReport c = d.wait_completion();
    EXPECT_TRUE(finished.insert(c.task_id).second);
  }
  d.shutdown();
  for (auto& t : threads) t.join();
  EXPECT_EQ(finished, submitted);
  std::set<TaskId> assigned;
  std::size_t total = 0;
  for (const auto& r : received) {
    assigned.insert(r.begin(), r.end());
    total += r.size();
  }
  EXPECT_EQ(total, static_cast<std::size_t>(n));
  EXPECT_EQ(assigned, submitted);
  const TaskCounters c = d.counters();
  EXPECT_EQ(c.submitted, n);
  EXPECT_EQ(c.completed + c.failed, n);
  EXPECT_EQ(c.in_flight, 0);
  EXPECT_EQ(audit_task_log(d.log(), c), "");
}

EvaluationReport rollout_report(double value, std::int64_t episodes = 10) {
  EvaluationReport r;
  r.eval_rollout = value;
  r.episodes = episodes;
  return r;
}

TEST(StopperTest, PlateauBudgetAndEpisodeCap) {
  StopperConfig cfg;
  cfg.plateau_window = 3;
  cfg.plateau_delta = 0.01;
  std::vector<EvaluationReport> reports = {rollout_report(0.0), rollout_report(0.5)};
  EXPECT_FALSE(check_stop(reports, {}, 0, cfg).stop);
  reports.push_back(rollout_report(1.0));
  EXPECT_FALSE(check_stop(reports, {}, 0, cfg).stop);
  reports.push_back(rollout_report(1.0));
  reports.push_back(rollout_report(1.005));
  EXPECT_EQ(check_stop(reports, {}, 0, cfg).reason, "plateau");
  // Improvement of 0.005 per report stops at the first full window.
  StopperConfig slow;
  slow.plateau_window = 2;
  slow.plateau_delta = 0.01;
  EXPECT_FALSE(check_stop({rollout_report(1.0)}, {}, 0, slow).stop);
  EXPECT_TRUE(check_stop({rollout_report(1.0), rollout_report(1.005)}, {}, 0, slow).stop);
  EXPECT_FALSE(check_stop({rollout_report(1.0), rollout_report(2.0)}, {}, 0, slow).stop);
  EXPECT_FALSE(check_stop({}, {}, 0, slow).stop);
  StopperConfig budget;
  budget.train_budget = 100;
  EXPECT_FALSE(check_stop({}, {}, 99, budget).stop);
  EXPECT_EQ(check_stop({}, {}, 100, budget).reason, "train_budget");
  StopperConfig cap;
  cap.max_episodes = 25;
  EXPECT_FALSE(check_stop({rollout_report(0, 10), rollout_report(0, 10)}, {}, 0, cap).stop);
  EXPECT_EQ(check_stop({rollout_report(0, 10), rollout_report(0, 15)}, {}, 0, cap).reason,
            "episode_cap");
}

PoolSnapshot uniform_pools(int num_agents) {
  std::vector<PolicyPool> pools;
  for (int i = 0; i < num_agents; ++i) {
    PolicyPool pool(i);
    pool.extend(TabularPolicy(pool.next_policy_id()));
    pools.push_back(std::move(pool));
  }
  return std::make_shared<const std::vector<PolicyPool>>(std::move(pools));
}

TEST(RolloutWorkerTest, AccountingAndDeterminism) {
  auto game = make_kuhn_poker();
  const PoolSnapshot pools = uniform_pools(2);
  RolloutRequest req;
  req.meta = uniform_meta_strategy(*pools);
  req.collect_agents = {0, 1};
  req.num_episodes = 37;
  req.seed = 99;
  DatasetServer a(100000), b(100000);
  const EvaluationReport ra = RolloutWorker(game, 4, nullptr, &a).rollout(req, pools);
  const EvaluationReport rb = RolloutWorker(game, 4, nullptr, &b).rollout(req, pools);
  EXPECT_EQ(ra.episodes, 37);
  // Two deals plus two to three decisions per Kuhn episode.
  EXPECT_GE(ra.steps, 37 * 4);
  EXPECT_LE(ra.steps, 37 * 5);
  EXPECT_EQ(ra.steps, rb.steps);
  EXPECT_EQ(a.contents(0), b.contents(0));
  EXPECT_EQ(a.contents(1), b.contents(1));
  // Every decision of each agent becomes exactly one transition, ending done.
  const std::int64_t decisions = ra.steps - 2 * ra.episodes;
  EXPECT_EQ(static_cast<std::int64_t>(a.size(0) + a.size(1)), decisions);
  std::int64_t terminal = 0;
  for (const Transition& t : a.contents(0)) terminal += t.done;
  EXPECT_EQ(terminal, 37);
}

TEST(RolloutWorkerTest, ExactSimulationMatchesExpectation) {
  auto game = make_kuhn_poker();
  const PoolSnapshot pools = uniform_pools(2);
  SimulationTask task;
  task.combination.policy_ids = {"agent_0/policy_0", "agent_1/policy_0"};
  task.mode = SimulationMode::kExact;
  const EvaluationReport r = RolloutWorker(game, 1, nullptr, nullptr).simulate(task, 0, pools);
  EXPECT_NEAR(r.mean_returns[0], 0.125, 1e-12);
  EXPECT_NEAR(r.mean_returns[1], -0.125, 1e-12);
}

TEST(RolloutWorkerTest, RpsRockAgainstPaper) {
  auto game = make_matrix_game(rock_paper_scissors());
  std::vector<PolicyPool> pools;
  for (int i = 0; i < 2; ++i) {
    PolicyPool pool(i);
    TabularPolicy p(pool.next_policy_id());
    p.set(std::to_string(i) + "|||", i == 0 ? std::vector<double>{1, 0, 0}
                                            : std::vector<double>{0, 1, 0});
    pool.extend(std::move(p));
    pools.push_back(std::move(pool));
  }
  const PoolSnapshot snap = std::make_shared<const std::vector<PolicyPool>>(pools);
  SimulationTask task;
  task.combination.policy_ids = {"agent_0/policy_0", "agent_1/policy_0"};
  task.mode = SimulationMode::kExact;
  const EvaluationReport exact = RolloutWorker(game, 1, nullptr, nullptr).simulate(task, 0, snap);
  EXPECT_EQ(exact.mean_returns, (std::vector<double>{-1.0, 1.0}));
  task.mode = SimulationMode::kMonteCarlo;
  task.num_episodes = 10;
  const EvaluationReport mc = RolloutWorker(game, 2, nullptr, nullptr).simulate(task, 5, snap);
  EXPECT_EQ(mc.mean_returns, (std::vector<double>{-1.0, 1.0}));
  EXPECT_EQ(mc.episodes, 10);
}

TEST(RolloutWorkerTest, TrainablePolicyIsPulledFromParameterServer) {
  auto game = make_matrix_game(rock_paper_scissors());
  ParameterServer params;
  std::vector<PolicyPool> pools;
  for (int i = 0; i < 2; ++i) {
    PolicyPool pool(i);
    pool.extend(TabularPolicy(pool.next_policy_id()));
    pools.push_back(std::move(pool));
  }
  TabularPolicy scissors("agent_0/policy_0", true, 2);
  scissors.set("0|||", {0, 0, 1});
  params.push("agent_0/policy_0", serialize_parameters(scissors), 2);
  const PoolSnapshot snap = std::make_shared<const std::vector<PolicyPool>>(pools);
  DatasetServer ds(1000);
  RolloutRequest req;
  req.meta = uniform_meta_strategy(pools);
  req.overrides = {{0, "agent_0/policy_0"}};
  req.collect_agents = {0};
  req.num_episodes = 10;
  RolloutWorker(game, 2, &params, &ds).rollout(req, snap);
  ASSERT_EQ(ds.size(0), 10u);
  for (const Transition& t : ds.contents(0)) {
    EXPECT_EQ(t.action, 2);
    EXPECT_EQ(t.policy_version, 2u);
  }
}

TEST(CoordinatorTest, UnknownSolverFailsBeforeDispatch) {
  ExperimentConfig cfg;
  cfg.meta_solver.name = "nonexistent";
  EXPECT_THROW(Coordinator{cfg}, NotFound);
}

ExperimentConfig rps_config(const std::string& executor) {
  ExperimentConfig cfg;
  cfg.seed = 3;
  cfg.game = {{"name", "rock_paper_scissors"}};
  cfg.simulation.mode = SimulationMode::kExact;
  cfg.runtime.executor = executor;
  cfg.runtime.num_actors = 2;
  cfg.runtime.task_log = true;
  cfg.meta_solver.fictitious_play_iterations = 20000;
  return cfg;
}

TEST(CoordinatorTest, RpsConvergesInline) {
  ExperimentConfig cfg = rps_config("inline");
  cfg.meta_solver.name = "alpha_rank";
  const RunSummary s = coordinator_run(cfg);
  EXPECT_EQ(s.stop_reason, "converged") << s.error;
  EXPECT_EQ(s.exit_code(), 0);
  EXPECT_LE(s.iterations, 4);
  EXPECT_LE(s.final_exploitability, 1e-6);
  EXPECT_EQ(s.task_audit, "");
  EXPECT_TRUE(s.parameter_audit_ok);
  EXPECT_EQ(s.tasks.in_flight, 0);
}

TEST(CoordinatorTest, ThreadedMatchesInlineStructure) {
  ExperimentConfig cfg = rps_config("threads");
  cfg.meta_solver.name = "alpha_rank";
  const RunSummary s = coordinator_run(cfg);
  EXPECT_EQ(s.stop_reason, "converged") << s.error;
  EXPECT_LE(s.final_exploitability, 1e-6);
  EXPECT_EQ(s.task_audit, "");
}

TEST(CoordinatorTest, MetricsRowsAreWritten) {
  const std::string path = (std::filesystem::temp_directory_path() / "pbmarl_rt_metrics.jsonl");
  ExperimentConfig cfg = rps_config("inline");
  cfg.algorithm.max_iterations = 2;
  cfg.algorithm.check_convergence = false;
  RunSummary s;
  {
    MetricsSink sink(path);
    s = coordinator_run(cfg, &sink);
  }
  EXPECT_EQ(s.stop_reason, "max_iterations");
  EXPECT_EQ(s.exit_code(), 2);
  std::vector<MetricsRow> rows;
  for (const auto& record : read_metrics(path)) rows.push_back(MetricsRow::from_json(record));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].pool_size, (std::vector<int>{1, 1}));
  EXPECT_EQ(rows[2].pool_size, (std::vector<int>{3, 3}));
  EXPECT_EQ(rows[2].wall_time_s, 0.0);
  std::filesystem::remove(path);
}

TEST(CoordinatorTest, FailedTasksAreRetried) {
  ExperimentConfig cfg = rps_config("inline");
  std::set<TaskId> failed_once;
  CoordinatorHooks hooks;
  hooks.inject_failure = [&failed_once](const TaskDescriptor& t) {
    return t.kind == TaskKind::kSimulation && t.attempt == 0 && failed_once.insert(t.task_id).second;
  };
  Coordinator c(cfg, hooks);
  const RunSummary s = c.run();
  EXPECT_EQ(s.stop_reason, "converged") << s.error;
  EXPECT_GT(s.tasks.failed, 0);
  EXPECT_EQ(s.task_audit, "");
}

TEST(CoordinatorTest, PersistentFailureAborts) {
  ExperimentConfig cfg = rps_config("inline");
  CoordinatorHooks hooks;
  hooks.inject_failure = [](const TaskDescriptor& t) { return t.kind == TaskKind::kEvaluation; };
  Coordinator c(cfg, hooks);
  const RunSummary s = c.run();
  EXPECT_EQ(s.stop_reason, "failure");
  EXPECT_EQ(s.exit_code(), 4);
  EXPECT_EQ(s.tasks.failed, cfg.runtime.max_retries + 1);
}

TEST(CoordinatorTest, QLearningSyncAndAsync) {
  for (const std::string training : {"sync", "async"}) {
    ExperimentConfig cfg = rps_config("threads");
    cfg.oracle.name = "q_learning";
    cfg.oracle.q_learning.episodes = 2000;
    cfg.runtime.training = training;
    cfg.algorithm.max_iterations = 3;
    cfg.algorithm.check_convergence = false;
    const RunSummary s = coordinator_run(cfg);
    EXPECT_EQ(s.stop_reason, "max_iterations") << training << ": " << s.error;
    EXPECT_EQ(s.pool_sizes, (std::vector<int>{4, 4}));
    EXPECT_GT(s.total_env_steps, 0);
    EXPECT_EQ(s.task_audit, "");
    EXPECT_TRUE(s.parameter_audit_ok);
  }
}

TEST(CoordinatorTest, InlineRunsAreReproducible) {
  ExperimentConfig cfg = rps_config("inline");
  cfg.game = {{"name", "kuhn_poker"}};
  cfg.oracle.name = "q_learning";
  cfg.oracle.q_learning.episodes = 500;
  cfg.simulation.mode = SimulationMode::kMonteCarlo;
  cfg.simulation.episodes = 200;
  cfg.algorithm.max_iterations = 2;
  Coordinator a(cfg), b(cfg);
  a.run();
  b.run();
  ASSERT_EQ(a.rows().size(), b.rows().size());
  for (std::size_t i = 0; i < a.rows().size(); ++i) {
    EXPECT_EQ(a.rows()[i].to_json().dump(), b.rows()[i].to_json().dump());
  }
}

TEST(ConfigTest, StrictParsingAndValidation) {
  nlohmann::json j = {{"seed", 1}, {"game", {{"name", "kuhn_poker"}}}};
  EXPECT_NO_THROW(ExperimentConfig::from_json(j));
  j["meta_solver"] = {{"name", "nonexistent"}};
  EXPECT_THROW(ExperimentConfig::from_json(j), NotFound);
  j["meta_solver"] = {{"name", "uniform"}};
  j["runtime"] = {{"num_actors", 0}};
  EXPECT_THROW(ExperimentConfig::from_json(j), InvalidArgument);
  j["runtime"] = {{"num_actor", 1}};
  EXPECT_THROW(ExperimentConfig::from_json(j), InvalidArgument);
  j["runtime"] = {{"num_actors", "four"}};
  EXPECT_THROW(ExperimentConfig::from_json(j), InvalidArgument);
  j.erase("runtime");
  j["game"] = {{"name", "chess"}};
  EXPECT_THROW(ExperimentConfig::from_json(j), NotFound);
}

TEST(ConfigTest, OverridesAndRoundTrip) {
  nlohmann::json j = {{"seed", 1}};
  j = apply_overrides(j, {"seed=7", "algorithm.name=fsp", "game.name=rock_paper_scissors"});
  const ExperimentConfig cfg = ExperimentConfig::from_json(j);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.algorithm.name, "fsp");
  EXPECT_EQ(ExperimentConfig::from_json(cfg.to_json()).to_json(), cfg.to_json());
  EXPECT_THROW(apply_overrides(j, {"novalue"}), InvalidArgument);
}

}  // namespace
}  // namespace pbmarl
