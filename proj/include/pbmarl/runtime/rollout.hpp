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

#ifndef PBMARL_RUNTIME_ROLLOUT_HPP_
#define PBMARL_RUNTIME_ROLLOUT_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pbmarl/game/game.hpp"
#include "pbmarl/metagame/payoff_table.hpp"
#include "pbmarl/policy/population.hpp"
#include "pbmarl/runtime/dataset_server.hpp"
#include "pbmarl/runtime/parameter_server.hpp"

namespace pbmarl {

using PoolSnapshot = std::shared_ptr<const std::vector<PolicyPool>>;

struct EvaluationReport {
  enum class Source { kRollout, kTraining, kSimulation };
  Source source = Source::kRollout;
  PolicyCombination combination;  // simulations only
  std::vector<double> mean_returns;
  std::vector<double> return_variances;  // per-episode sample variance
  std::int64_t episodes = 0;
  std::int64_t steps = 0;
  double eval_rollout = 0.0;  // mean return of the (first) collecting agent
  double eval_train = 0.0;
};

// Frozen policies come from the pool snapshot; policies that are still
// trainable are pulled from the parameter server and cached per version.
class PolicyResolver {
 public:
  PolicyResolver(PoolSnapshot pools, const ParameterServer* params);

  std::shared_ptr<const TabularPolicy> resolve(int agent, const PolicyId& id);

 private:
  PoolSnapshot pools_;
  const ParameterServer* params_;
  std::map<PolicyId, std::pair<std::uint64_t, std::shared_ptr<const TabularPolicy>>> pulled_;
};

struct RolloutRequest {
  MetaStrategy meta;                   // behaviour distribution for every agent
  std::map<int, PolicyId> overrides;   // forced policies, e.g. the trainable one
  std::set<int> collect_agents;        // transitions of these agents are appended
  int num_episodes = 1;
  std::uint64_t seed = 0;
  std::function<bool()> stop;          // checked before each new episode
};

// Steps `num_envs` environments round-robin, one state transition at a time.
class RolloutWorker {
 public:
  RolloutWorker(std::shared_ptr<const Game> game, int num_envs, const ParameterServer* params,
                DatasetServer* dataset);

  EvaluationReport rollout(const RolloutRequest& request, const PoolSnapshot& pools);

  // Exact mode enumerates the tree; Monte-Carlo mode plays task.num_episodes.
  EvaluationReport simulate(const SimulationTask& task, std::uint64_t seed,
                            const PoolSnapshot& pools);

  int num_envs() const { return num_envs_; }

 private:
  std::shared_ptr<const Game> game_;
  int num_envs_;
  const ParameterServer* params_;
  DatasetServer* dataset_;
};

// Payoff-table owner. Simulation results may arrive from several actors; all
// mutations are serialized here.
class Evaluator {
 public:
  explicit Evaluator(int num_agents) : table_(num_agents) {}

  std::vector<SimulationTask> expand_axes(int agent, const PolicyPool& pool, int num_episodes,
                                          SimulationMode mode);
  void record_simulation(const ProfileIndex& index, const EvaluationReport& report);
  PayoffTable snapshot() const;

 private:
  mutable std::mutex mu_;
  PayoffTable table_;
};

struct StopperConfig {
  int plateau_window = 0;  // 0 disables the plateau rule
  double plateau_delta = 0.01;
  std::int64_t train_budget = 0;  // optimize calls; 0 = unlimited
  std::int64_t max_episodes = 0;  // rollout episodes; 0 = unlimited
};

struct StopDecision {
  bool stop = false;
  std::string reason;  // plateau | train_budget | episode_cap
};

// Pure function of the report history. The plateau rule compares the first
// and last Eval_rollout of the most recent window; the improvement is scaled
// by max(|first|, 1).
StopDecision check_stop(const std::vector<EvaluationReport>& rollout_reports,
                        const std::vector<EvaluationReport>& training_reports,
                        std::int64_t updates_done, const StopperConfig& config);

}  // namespace pbmarl

#endif  // PBMARL_RUNTIME_ROLLOUT_HPP_
