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


#include <filesystem>
#include <fstream>
#include <random>

#include "gtest/gtest.h"
#include "pbmarl/evaluation/exploitability.hpp"
#include "pbmarl/evaluation/metrics.hpp"
#include "pbmarl/game/games.hpp"
#include "pbmarl/runtime/coordinator.hpp"

namespace pbmarl {
namespace {

TabularPolicy pure_action(int agent, int num_actions, int action, const std::string& id) {
  TabularPolicy p(id, false);
  std::vector<double> probs(num_actions, 0.0);
  probs[action] = 1.0;
  p.set(std::to_string(agent) + "|||", probs);
  return p;
}

std::vector<PolicyPool> pure_pools(int num_actions, const std::vector<std::vector<int>>& actions) {
  std::vector<PolicyPool> pools;
  for (int i = 0; i < static_cast<int>(actions.size()); ++i) {
    PolicyPool pool(i);
    for (int a : actions[i]) pool.extend(pure_action(i, num_actions, a, pool.next_policy_id()));
    pools.push_back(std::move(pool));
  }
  return pools;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

TEST(ExploitabilityTest, MatchingPenniesUniformIsNash) {
  auto game = make_matrix_game(matching_pennies());
  const auto pools = pure_pools(2, {{0, 1}, {0, 1}});
  const ExploitabilityReport r = exploitability(*game, uniform_meta_strategy(pools), pools);
  EXPECT_NEAR(r.exploitability, 0.0, 1e-12);
  EXPECT_NEAR(r.nash_conv, 0.0, 1e-12);
}

TEST(ExploitabilityTest, DegenerateRockPools) {
  auto game = make_matrix_game(rock_paper_scissors());
  const auto pools = pure_pools(3, {{0}, {0}});
  const ExploitabilityReport r = exploitability(*game, uniform_meta_strategy(pools), pools);
  EXPECT_NEAR(r.gains[0], 1.0, 1e-12);
  EXPECT_NEAR(r.gains[1], 1.0, 1e-12);
  EXPECT_NEAR(r.exploitability, 1.0, 1e-12);
  EXPECT_NEAR(r.nash_conv, 2.0, 1e-12);
}

TEST(ExploitabilityTest, RockAgainstMixedPool) {
  auto game = make_matrix_game(rock_paper_scissors());
  auto pools = pure_pools(3, {{0}, {0, 1, 2}});
  const ExploitabilityReport r = exploitability(*game, uniform_meta_strategy(pools), pools);
  // Rock against uniform: gain 0. The second agent answers rock with paper.
  EXPECT_NEAR(r.gains[0], 0.0, 1e-12);
  EXPECT_NEAR(r.gains[1], 1.0, 1e-12);
  EXPECT_NEAR(r.exploitability, (0.0 + 1.0) / 2.0, 1e-12);
}

TEST(ExploitabilityTest, KuhnUniformGoldenValue) {
  auto game = make_kuhn_poker();
  std::vector<PolicyPool> pools;
  for (int i = 0; i < 2; ++i) {
    PolicyPool pool(i);
    pool.extend(TabularPolicy(pool.next_policy_id()));
    pools.push_back(std::move(pool));
  }
  const ExploitabilityReport r = exploitability(*game, uniform_meta_strategy(pools), pools);
  EXPECT_NEAR(r.best_response_values[0], 0.5, 1e-12);
  EXPECT_NEAR(r.best_response_values[1], 5.0 / 12.0, 1e-12);
  EXPECT_NEAR(r.nash_conv, 11.0 / 12.0, 1e-12);
  EXPECT_NEAR(r.exploitability, 11.0 / 24.0, 1e-12);

  // One exact step from the same start strictly reduces it.
  ExperimentConfig cfg;
  cfg.game = {{"name", "kuhn_poker"}};
  cfg.runtime.executor = "inline";
  cfg.simulation.mode = SimulationMode::kExact;
  cfg.algorithm.max_iterations = 1;
  cfg.algorithm.check_convergence = false;
  Coordinator c(cfg);
  c.run();
  ASSERT_EQ(c.rows().size(), 2u);
  EXPECT_NEAR(c.rows()[0].exploitability, 11.0 / 24.0, 1e-12);
  EXPECT_LT(c.rows()[1].exploitability, c.rows()[0].exploitability);
}

TEST(ExploitabilityTest, NonNegativeOnRandomMetaStrategies) {
  auto game = make_kuhn_poker();
  Rng rng(17);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<PolicyPool> pools;
  for (int i = 0; i < 2; ++i) {
    PolicyPool pool(i);
    pool.extend(TabularPolicy(pool.next_policy_id()));
    pool.extend(first_action_policy(*game, i, pool.next_policy_id()));
    TabularPolicy random(pool.next_policy_id());
    for (const char* card : {"J", "Q", "K"}) {
      for (const char* h : {"", "p", "b", "pb"}) {
        const std::string key = std::to_string(i) + "|" + card + "||" + h;
        const double x = u(rng);
        random.set(key, {x, 1.0 - x});
      }
    }
    pool.extend(std::move(random));
    pools.push_back(std::move(pool));
  }
  for (int trial = 0; trial < 20; ++trial) {
    MetaStrategy meta = uniform_meta_strategy(pools);
    for (AgentDistribution& d : meta.agents) {
      double total = 0.0;
      for (double& p : d.probs) total += (p = u(rng));
      for (double& p : d.probs) p /= total;
    }
    const ExploitabilityReport r = exploitability(*game, meta, pools);
    for (double g : r.gains) EXPECT_GE(g, -1e-9);
    EXPECT_GE(r.nash_conv, -1e-9);
    EXPECT_NEAR(r.exploitability, r.nash_conv / 2.0, 1e-12);
  }
}

TEST(ConvergenceRuleTest, Boundaries) {
  EXPECT_TRUE(psro_converged({0.3, -0.3}, {0.3, -0.3}, 0.0));
  EXPECT_FALSE(psro_converged({0.4, -0.3}, {0.3, -0.3}, 0.05));
  EXPECT_TRUE(psro_converged({0.34, -0.25}, {0.3, -0.3}, 0.05));
  EXPECT_TRUE(psro_converged({0.25, -0.25}, {0.3, -0.3}, 0.05));
  EXPECT_THROW(psro_converged({0.0}, {0.0, 0.0}, 0.1), InvalidArgument);
}

TEST(DoubleOracleTest, RandomZeroSumMatrixGames) {
  Rng rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 4;
    std::vector<double> row(n * n);
    for (double& x : row) x = u(rng);
    std::vector<double> col(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) col[k] = -row[k];
    ExperimentConfig cfg;
    cfg.game = {{"name", "matrix"}, {"shape", {n, n}}, {"payoffs", {row, col}}};
    cfg.runtime.executor = "inline";
    cfg.simulation.mode = SimulationMode::kExact;
    cfg.algorithm.bootstrap = "first_action";
    cfg.algorithm.convergence_epsilon = 0.01;
    cfg.meta_solver.fictitious_play_iterations = 100000;
    Coordinator c(cfg);
    const RunSummary s = c.run();
    EXPECT_EQ(s.stop_reason, "converged") << "trial " << trial;
    EXPECT_LE(s.iterations, n + 1) << "trial " << trial;
    EXPECT_LE(s.final_exploitability, 0.02) << "trial " << trial;
  }
}

// Restricted equilibria need not improve monotonically on arbitrary games
// (random 3x3 games give counterexamples), but they do on the cyclic ones.
TEST(DoubleOracleTest, CyclicGamesImproveMonotonically) {
  for (const MatrixGameDefinition& def : {rock_paper_scissors(), matching_pennies()}) {
    ExperimentConfig cfg;
    cfg.game = {{"name", "matrix"}, {"shape", def.shape}, {"payoffs", def.payoffs}};
    cfg.runtime.executor = "inline";
    cfg.simulation.mode = SimulationMode::kExact;
    cfg.algorithm.bootstrap = "first_action";
    cfg.algorithm.max_iterations = 6;
    cfg.algorithm.check_convergence = false;
    cfg.meta_solver.fictitious_play_iterations = 100000;
    Coordinator c(cfg);
    c.run();
    for (std::size_t k = 1; k < c.rows().size(); ++k) {
      EXPECT_LE(c.rows()[k].exploitability, c.rows()[k - 1].exploitability + 0.02)
          << def.name << " iteration " << k;
    }
    EXPECT_LE(c.rows().back().exploitability, 0.02) << def.name;
  }
}

MetricsRow sample_row(int iteration) {
  MetricsRow row;
  row.iteration = iteration;
  row.wall_time_s = 0.001 * iteration;
  row.pool_size = {iteration + 1, iteration + 1};
  row.exploitability = 1.0 / (iteration + 3);
  row.nash_conv = 2.0 / (iteration + 3);
  row.nash_payoffs = {0.1 * iteration, -0.1 * iteration};
  row.weighted_payoffs = {0.3, 1.0 / 3.0};
  row.env_steps_total = 1000 * iteration;
  row.steps_per_second = 12345.678;
  row.extra["meta_strategy"] = {{0.5, 0.5}, {1.0}};
  return row;
}

TEST(MetricsTest, TwoRowsInOrder) {
  const std::string path = temp_path("pbmarl_metrics_two.jsonl");
  {
    MetricsSink sink(path);
    sink.write(sample_row(0));
    sink.write(sample_row(1));
  }
  const auto records = read_metrics(path);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0]["iteration"], 0);
  EXPECT_EQ(records[1]["iteration"], 1);
  std::filesystem::remove(path);
}

TEST(MetricsTest, ThousandRowsRoundTrip) {
  const std::string path = temp_path("pbmarl_metrics_many.jsonl");
  std::vector<nlohmann::json> written;
  {
    MetricsSink sink(path);
    for (int i = 0; i < 1000; ++i) {
      written.push_back(sample_row(i).to_json());
      sink.write(written.back());
    }
  }
  const auto records = read_metrics(path);
  ASSERT_EQ(records.size(), written.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i], written[i]);
    EXPECT_EQ(MetricsRow::from_json(records[i]).to_json(), written[i]);
  }
  std::filesystem::remove(path);
}

TEST(MetricsTest, MissingFieldIsSchemaError) {
  nlohmann::json record = sample_row(0).to_json();
  record.erase("exploitability");
  try {
    validate_metrics_record(record);
    FAIL() << "expected a schema error";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("exploitability"), std::string::npos);
  }
  nlohmann::json ragged = sample_row(0).to_json();
  ragged["nash_payoffs"] = {0.0};
  EXPECT_THROW(validate_metrics_record(ragged), InvalidArgument);
  MetricsSink sink(temp_path("pbmarl_metrics_bad.jsonl"));
  EXPECT_THROW(sink.write(record), InvalidArgument);
  EXPECT_EQ(sink.rows(), 0u);
}

TEST(MetricsTest, AtomicWriteReplacesWholeFile) {
  const std::string path = temp_path("pbmarl_summary.json");
  write_file_atomic(path, "{\"a\":1}\n");
  write_file_atomic(path, "{\"b\":2}\n");
  std::ifstream in(path);
  const std::string content((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(content, "{\"b\":2}\n");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace pbmarl
