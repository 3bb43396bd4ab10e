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

#include "pbmarl/oracle/q_learning.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

namespace pbmarl {
namespace {

int argmax_lowest(const std::vector<double>& q) {
  int best = 0;
  for (int a = 1; a < static_cast<int>(q.size()); ++a) {
    if (q[a] > q[best]) best = a;
  }
  return best;
}

}  // namespace

QLearningTrainer::QLearningTrainer(int agent, QLearningConfig config)
    : agent_(agent), config_(config), key_prefix_(std::to_string(agent) + "|") {
  if (!(config_.learning_rate > 0.0 && config_.learning_rate <= 1.0)) {
    throw InvalidArgument("q_learning: learning_rate must be in (0, 1]");
  }
  if (!(config_.discount >= 0.0 && config_.discount <= 1.0)) {
    throw InvalidArgument("q_learning: discount must be in [0, 1]");
  }
}

std::vector<double>& QLearningTrainer::row(const std::string& key, int num_actions) {
  auto [it, inserted] = q_.try_emplace(key);
  if (inserted) {
    it->second.assign(num_actions, 0.0);
  } else if (static_cast<int>(it->second.size()) != num_actions) {
    throw InvalidArgument("q_learning: action count for " + key + " changed from " +
                          std::to_string(it->second.size()) + " to " +
                          std::to_string(num_actions));
  }
  return it->second;
}

double QLearningTrainer::max_q(const std::string& key) const {
  const auto it = q_.find(key);
  if (it == q_.end()) return 0.0;
  return *std::max_element(it->second.begin(), it->second.end());
}

const std::vector<double>* QLearningTrainer::q_values(const std::string& key) const {
  const auto it = q_.find(key);
  return it == q_.end() ? nullptr : &it->second;
}

Statistics QLearningTrainer::optimize(const SampleBatch& batch) {
  batch.validate();
  if (batch.empty()) throw InvalidArgument("q_learning: empty batch");
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    if (batch.agent[i] != agent_) {
      throw InvalidArgument("q_learning: batch row for " + agent_name(batch.agent[i]) +
                            " given to the trainer of " + agent_name(agent_));
    }
    if (batch.info_state[i].rfind(key_prefix_, 0) != 0 ||
        (!batch.done[i] && batch.next_info_state[i].rfind(key_prefix_, 0) != 0)) {
      throw InvalidArgument("q_learning: unknown information-state encoding \"" +
                            batch.info_state[i] + "\"");
    }
  }
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    const double bootstrap =
        batch.done[i] ? 0.0 : config_.discount * max_q(batch.next_info_state[i]);
    std::vector<double>& q = row(batch.info_state[i], batch.num_actions[i]);
    const double delta = batch.reward[i] + bootstrap - q[batch.action[i]];
    q[batch.action[i]] += config_.learning_rate * delta;
    abs_sum += std::abs(delta);
    sq_sum += delta * delta;
  }
  double value_sum = 0.0;
  for (std::size_t i = 0; i < batch.rows(); ++i) value_sum += max_q(batch.info_state[i]);
  ++version_;
  const double n = static_cast<double>(batch.rows());
  return {{"td_error", abs_sum / n},
          {"loss", sq_sum / n},
          {"batch_size", n},
          {"version", static_cast<double>(version_)},
          {"eval_train", value_sum / n}};
}

TabularPolicy QLearningTrainer::greedy_policy(std::string id) const {
  return epsilon_greedy_policy(std::move(id), 0.0);
}

TabularPolicy QLearningTrainer::epsilon_greedy_policy(std::string id, double epsilon) const {
  TabularPolicy policy(std::move(id));
  policy.set_version(version_);
  // Sorted keys keep the table construction order independent of hashing.
  std::vector<const std::pair<const std::string, std::vector<double>>*> rows;
  rows.reserve(q_.size());
  for (const auto& entry : q_) rows.push_back(&entry);
  std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->first < b->first; });
  for (const auto* entry : rows) {
    const std::vector<double>& q = entry->second;
    const double n = static_cast<double>(q.size());
    std::vector<double> probs(q.size(), epsilon / n);
    probs[argmax_lowest(q)] += 1.0 - epsilon;
    policy.set(entry->first, std::move(probs));
  }
  return policy;
}

QLearningOracle::QLearningOracle(OracleTask task)
    : task_(std::move(task)),
      trainer_(task_.agent, task_.rl),
      published_version_(task_.initial_version) {
  if (task_.rl.episodes < 1 || task_.rl.batch_size < 1 || task_.rl.episodes_per_epoch < 1 ||
      task_.rl.updates_per_epoch < 0 || task_.rl.push_interval < 1) {
    throw InvalidArgument("q_learning: budget, batch size and intervals must be positive");
  }
}

double QLearningOracle::epsilon() const {
  const int total = std::max(1, task_.rl.total_updates());
  const double progress = std::min(1.0, static_cast<double>(updates_done_) / total);
  return task_.rl.epsilon_start + (task_.rl.epsilon_end - task_.rl.epsilon_start) * progress;
}

void QLearningOracle::publish(ParameterSink& sink, double eval_train) {
  TabularPolicy behaviour = trainer_.epsilon_greedy_policy(task_.policy_id, epsilon());
  behaviour.set_version(++published_version_);
  sink.push(task_.policy_id, serialize_parameters(behaviour), published_version_);
  if (task_.rl.select_best_checkpoint &&
      (!best_checkpoint_ || eval_train > best_checkpoint_->first)) {
    best_checkpoint_.emplace(eval_train, trainer_.greedy_policy(task_.policy_id));
  }
}

Statistics QLearningOracle::train(DataSource& source, ParameterSink& sink, int updates) {
  Statistics last;
  for (int u = 0; u < updates; ++u) {
    SampleBatch batch;
    for (int misses = 0;; ++misses) {
      try {
        batch = source.sample(task_.rl.batch_size);
        break;
      } catch (const Starvation&) {
        if (misses >= task_.rl.starvation_patience) {
          throw Starvation("q_learning: no training data for " + task_.policy_id + " after " +
                           std::to_string(misses + 1) + " attempts");
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
      }
    }
    last = trainer_.optimize(trainer_.preprocess(std::move(batch)));
    ++updates_done_;
    if (updates_done_ % task_.rl.push_interval == 0) publish(sink, last["eval_train"]);
  }
  return last;
}

TabularPolicy QLearningOracle::result() const {
  if (best_checkpoint_) return best_checkpoint_->second;
  return trainer_.greedy_policy(task_.policy_id);
}

TabularPolicy q_learning_oracle(const OracleTask& task, DataSource& source, ParameterSink& sink,
                                const std::function<bool(const Statistics&)>& should_stop) {
  QLearningOracle oracle(task);
  for (int epoch = 0; epoch < task.rl.num_epochs(); ++epoch) {
    source.advance(task.rl.episodes_per_epoch);
    const Statistics stats = oracle.train(source, sink, task.rl.updates_per_epoch);
    if (should_stop && should_stop(stats)) break;
  }
  return oracle.result();
}

}  // namespace pbmarl
