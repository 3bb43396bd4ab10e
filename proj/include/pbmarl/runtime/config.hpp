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

#ifndef PBMARL_RUNTIME_CONFIG_HPP_
#define PBMARL_RUNTIME_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pbmarl/metagame/payoff_table.hpp"
#include "pbmarl/oracle/q_learning.hpp"
#include "pbmarl/runtime/rollout.hpp"

namespace pbmarl {

struct AlgorithmConfig {
  std::string name = "psro";  // psro | fsp | sp
  int max_iterations = 30;
  bool check_convergence = true;
  double convergence_epsilon = 1e-6;
  std::string bootstrap = "uniform";        // uniform | first_action
  std::string new_policy_init = "uniform";  // uniform | copy_last
  std::string pool_mapping = "per_agent";   // per_agent | shared
};

struct OracleConfig {
  std::string name = "exact";  // exact | q_learning
  QLearningConfig q_learning;
};

struct SimulationConfig {
  SimulationMode mode = SimulationMode::kMonteCarlo;
  int episodes = 2000;
};

struct RuntimeConfig {
  std::string executor = "threads";  // threads | inline (single-threaded, deterministic)
  int num_actors = 4;
  int envs_per_actor = 8;
  int num_evaluators = 1;
  std::string training = "sync";  // sync | async
  std::int64_t buffer_capacity = 100000;
  std::int64_t min_buffer_size = 1;
  int max_retries = 3;
  bool task_log = false;
};

struct StoppersConfig {
  std::optional<double> target_exploitability;
  std::string target_metric = "exploitability";  // exploitability | nash_conv
  int plateau_window = 0;
  double plateau_delta = 0.01;
  std::int64_t train_budget = 0;  // 0: the oracle's total updates
  std::int64_t max_episodes = 0;  // 0: the oracle's episode budget
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  nlohmann::json game = {{"name", "kuhn_poker"}};
  AlgorithmConfig algorithm;
  MetaSolverConfig meta_solver;
  OracleConfig oracle;
  SimulationConfig simulation;
  RuntimeConfig runtime;
  StoppersConfig stoppers;
  bool evaluate_exploitability = true;

  // Unknown keys and ill-typed values are errors. Calls validate().
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  // Throws InvalidArgument (or NotFound for unknown component names).
  void validate() const;

  StopperConfig inner_stoppers() const;
};

// Applies "a.b.c=value" overrides. The value is parsed as JSON when possible
// and taken as a string otherwise.
nlohmann::json apply_overrides(nlohmann::json config, const std::vector<std::string>& overrides);

nlohmann::json read_json_file(const std::string& path);

}  // namespace pbmarl

#endif  // PBMARL_RUNTIME_CONFIG_HPP_
