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

#ifndef PBMARL_ORACLE_Q_LEARNING_HPP_
#define PBMARL_ORACLE_Q_LEARNING_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pbmarl/policy/population.hpp"
#include "pbmarl/policy/tabular_policy.hpp"
#include "pbmarl/runtime/sample_batch.hpp"

namespace pbmarl {

using Statistics = std::map<std::string, double>;

// Customization point for learning algorithms. `preprocess` may merge or
// rewrite a batch (e.g. to share information between agents); `optimize`
// updates the trainable policy's internal state.
class Trainer {
 public:
  virtual ~Trainer() = default;
  virtual SampleBatch preprocess(SampleBatch batch) { return batch; }
  virtual Statistics optimize(const SampleBatch& batch) = 0;
};

struct QLearningConfig {
  double learning_rate = 0.05;
  double discount = 1.0;
  double epsilon_start = 0.2;
  double epsilon_end = 0.01;
  int batch_size = 64;
  int push_interval = 100;  // optimize calls between parameter pushes
  int episodes = 50000;     // rollout budget per oracle call
  int episodes_per_epoch = 10;
  int updates_per_epoch = 10;
  int starvation_patience = 50;  // consecutive empty samples tolerated
  bool select_best_checkpoint = false;

  int num_epochs() const { return (episodes + episodes_per_epoch - 1) / episodes_per_epoch; }
  int total_updates() const { return num_epochs() * updates_per_epoch; }
};

// Tabular Q-learning over information-state keys of one agent. Each row of a
// batch is applied in order with
//   Q(s,a) += lr * (r + discount * max_a' Q(s',a') * (1 - done) - Q(s,a)).
// Unseen states have Q = 0.
class QLearningTrainer : public Trainer {
 public:
  QLearningTrainer(int agent, QLearningConfig config);

  // Returns {td_error (mean |delta|), loss (mean delta^2), batch_size,
  // version, eval_train (mean max-Q over the batch states)}.
  Statistics optimize(const SampleBatch& batch) override;

  TabularPolicy greedy_policy(std::string id) const;
  TabularPolicy epsilon_greedy_policy(std::string id, double epsilon) const;

  const std::vector<double>* q_values(const std::string& key) const;
  std::size_t num_states() const { return q_.size(); }
  std::uint64_t version() const { return version_; }
  int agent() const { return agent_; }
  const QLearningConfig& config() const { return config_; }

 private:
  std::vector<double>& row(const std::string& key, int num_actions);
  double max_q(const std::string& key) const;

  int agent_;
  QLearningConfig config_;
  std::string key_prefix_;
  std::unordered_map<std::string, std::vector<double>> q_;
  std::uint64_t version_ = 0;
};

// Where the oracle reads training data from.
class DataSource {
 public:
  virtual ~DataSource() = default;
  // Produce `episodes` more episodes of data (may be a no-op for sources
  // that are filled concurrently).
  virtual void advance(int episodes) = 0;
  // Throws Starvation when not enough data is available yet.
  virtual SampleBatch sample(int n) = 0;
};

// Where the oracle publishes parameter snapshots.
class ParameterSink {
 public:
  virtual ~ParameterSink() = default;
  virtual void push(const PolicyId& policy_id, const ParameterBlob& blob,
                    std::uint64_t version) = 0;
};

struct OracleTask {
  int agent = 0;
  PolicyId policy_id;
  MetaStrategy opponent_meta;  // the agent's own entry is ignored
  QLearningConfig rl;
  std::uint64_t initial_version = 1;  // last version already published
};

// Drives a QLearningTrainer for one oracle call: epsilon decays linearly over
// the update budget, behaviour snapshots are pushed every push_interval
// updates with strictly increasing versions.
class QLearningOracle {
 public:
  explicit QLearningOracle(OracleTask task);

  // Runs `updates` optimize calls on batches from `source`. Returns the
  // statistics of the last call (empty if none).
  Statistics train(DataSource& source, ParameterSink& sink, int updates);

  double epsilon() const;
  // Greedy policy (or best checkpoint when select_best_checkpoint is set).
  TabularPolicy result() const;
  const QLearningTrainer& trainer() const { return trainer_; }
  std::uint64_t published_version() const { return published_version_; }
  int updates_done() const { return updates_done_; }

 private:
  void publish(ParameterSink& sink, double eval_train);

  OracleTask task_;
  QLearningTrainer trainer_;
  std::uint64_t published_version_;
  int updates_done_ = 0;
  std::optional<std::pair<double, TabularPolicy>> best_checkpoint_;
};

// Full oracle call: alternates data collection and updates for the episode
// budget. `should_stop` is consulted after each epoch with that epoch's
// training statistics.
TabularPolicy q_learning_oracle(const OracleTask& task, DataSource& source, ParameterSink& sink,
                                const std::function<bool(const Statistics&)>& should_stop = {});

}  // namespace pbmarl

#endif  // PBMARL_ORACLE_Q_LEARNING_HPP_
