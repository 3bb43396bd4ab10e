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

#include "pbmarl/runtime/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "pbmarl/game/expectation.hpp"

namespace pbmarl {
namespace {

struct PendingStep {
  std::string key;
  int action = 0;
  int num_actions = 0;
  std::uint64_t version = 0;
};

struct EnvSlot {
  std::unique_ptr<State> state;
  std::vector<std::shared_ptr<const TabularPolicy>> policies;
  std::map<int, std::optional<PendingStep>> pending;  // per collecting agent
  std::map<int, SampleBatch> transitions;
  std::int64_t steps = 0;
};

class ReturnStats {
 public:
  explicit ReturnStats(int n) : sum_(n, 0.0), sq_(n, 0.0) {}
  void add(const std::vector<double>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      sum_[i] += r[i];
      sq_[i] += r[i] * r[i];
    }
    ++count_;
  }
  std::int64_t count() const { return count_; }
  std::vector<double> means() const {
    std::vector<double> m(sum_.size(), 0.0);
    if (count_ == 0) return m;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = sum_[i] / count_;
    return m;
  }
  std::vector<double> variances() const {
    std::vector<double> v(sum_.size(), 0.0);
    if (count_ < 2) return v;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double mean = sum_[i] / count_;
      v[i] = std::max(0.0, (sq_[i] - count_ * mean * mean) / (count_ - 1));
    }
    return v;
  }

 private:
  std::vector<double> sum_, sq_;
  std::int64_t count_ = 0;
};

}  // namespace

PolicyResolver::PolicyResolver(PoolSnapshot pools, const ParameterServer* params)
    : pools_(std::move(pools)), params_(params) {
  if (!pools_) throw InvalidArgument("policy resolver needs a pool snapshot");
}

std::shared_ptr<const TabularPolicy> PolicyResolver::resolve(int agent, const PolicyId& id) {
  if (agent < 0 || agent >= static_cast<int>(pools_->size())) {
    throw NotFound("no pool for " + agent_name(agent));
  }
  const PolicyPool& pool = (*pools_)[agent];
  if (!pool.contains(id)) {
    throw NotFound("unresolvable policy " + id + " for " + agent_name(agent));
  }
  if (pool.is_frozen(id) || params_ == nullptr || !params_->contains(id)) return pool.get(id);
  const VersionedBlob latest = params_->pull(id);
  auto& cached = pulled_[id];
  if (!cached.second || cached.first != latest.version) {
    cached = {latest.version,
              std::make_shared<const TabularPolicy>(deserialize_parameters(*latest.blob))};
  }
  return cached.second;
}

RolloutWorker::RolloutWorker(std::shared_ptr<const Game> game, int num_envs,
                             const ParameterServer* params, DatasetServer* dataset)
    : game_(std::move(game)), num_envs_(num_envs), params_(params), dataset_(dataset) {
  if (!game_) throw InvalidArgument("rollout worker needs a game");
  if (num_envs_ < 1) throw InvalidArgument("rollout worker needs at least one environment");
}

EvaluationReport RolloutWorker::rollout(const RolloutRequest& request, const PoolSnapshot& pools) {
  if (request.num_episodes < 0) throw InvalidArgument("negative episode budget");
  if (!request.collect_agents.empty() && dataset_ == nullptr) {
    throw InvalidArgument("collecting rollout without a dataset server");
  }
  const int n = game_->num_players();
  if (static_cast<int>(request.meta.num_agents()) != n) {
    throw InvalidArgument("rollout meta-strategy covers the wrong number of agents");
  }
  Rng rng(request.seed);
  PolicyResolver resolver(pools, params_);
  std::vector<EnvSlot> slots(num_envs_);
  ReturnStats stats(n);
  double collect_sum = 0.0;
  std::int64_t steps = 0;
  int started = 0;
  int active = 0;

  auto start_episode = [&](EnvSlot& slot) {
    const PolicyCombination comb = sample_combination(request.meta, request.overrides, rng);
    slot.policies.clear();
    for (int a = 0; a < n; ++a) slot.policies.push_back(resolver.resolve(a, comb.policy_ids[a]));
    slot.state = game_->new_initial_state();
    slot.pending.clear();
    slot.transitions.clear();
    for (int a : request.collect_agents) slot.pending[a];
    ++started;
    ++active;
  };

  auto finish_episode = [&](EnvSlot& slot) {
    const std::vector<double> returns = slot.state->returns();
    for (auto& [agent, pending] : slot.pending) {
      if (pending) {
        slot.transitions[agent].push_back(Transition{pending->key, pending->action,
                                                     returns[agent], "", true, agent,
                                                     pending->version, pending->num_actions, 0});
      }
      dataset_->append(agent, slot.transitions[agent]);
    }
    if (!request.collect_agents.empty()) collect_sum += returns[*request.collect_agents.begin()];
    stats.add(returns);
    slot.state.reset();
    --active;
  };

  auto may_start = [&] {
    return started < request.num_episodes && !(request.stop && request.stop());
  };

  for (EnvSlot& slot : slots) {
    if (may_start()) start_episode(slot);
  }
  while (active > 0) {
    for (EnvSlot& slot : slots) {
      if (!slot.state) continue;
      State& s = *slot.state;
      if (s.is_chance_node()) {
        slot.state = s.child(sample_chance_outcome(s, rng));
      } else {
        const int p = s.current_player();
        const std::vector<Action> legal = s.legal_actions();
        const std::string key = s.info_state_key(p);
        const TabularPolicy& policy = *slot.policies[p];
        const std::vector<double> probs = policy.action_probabilities(key, legal);
        check_distribution(probs, legal.size(), key);
        const int idx = sample_index(probs, rng);
        auto pending = slot.pending.find(p);
        if (pending != slot.pending.end()) {
          const int num_actions = static_cast<int>(legal.size());
          if (pending->second) {
            slot.transitions[p].push_back(Transition{pending->second->key, pending->second->action,
                                                     0.0, key, false, p,
                                                     pending->second->version,
                                                     pending->second->num_actions, num_actions});
          }
          pending->second = PendingStep{key, idx, num_actions, policy.version()};
        }
        slot.state = s.child(legal[idx]);
      }
      ++steps;
      if (slot.state->is_terminal()) {
        finish_episode(slot);
        if (may_start()) start_episode(slot);
      }
    }
  }

  EvaluationReport report;
  report.source = EvaluationReport::Source::kRollout;
  report.mean_returns = stats.means();
  report.return_variances = stats.variances();
  report.episodes = stats.count();
  report.steps = steps;
  report.eval_rollout = stats.count() > 0 ? collect_sum / stats.count() : 0.0;
  return report;
}

EvaluationReport RolloutWorker::simulate(const SimulationTask& task, std::uint64_t seed,
                                         const PoolSnapshot& pools) {
  const int n = game_->num_players();
  if (static_cast<int>(task.combination.policy_ids.size()) != n) {
    throw InvalidArgument("simulation combination covers the wrong number of agents");
  }
  EvaluationReport report;
  report.source = EvaluationReport::Source::kSimulation;
  report.combination = task.combination;
  if (task.mode == SimulationMode::kExact) {
    PolicyResolver resolver(pools, params_);
    std::vector<std::shared_ptr<const TabularPolicy>> held;
    std::vector<const BehaviorPolicy*> ptrs;
    for (int a = 0; a < n; ++a) {
      held.push_back(resolver.resolve(a, task.combination.policy_ids[a]));
      ptrs.push_back(held.back().get());
    }
    report.mean_returns = expected_returns(*game_, pure_joint(ptrs));
    report.return_variances.assign(n, 0.0);
    report.episodes = 1;
    return report;
  }
  if (task.num_episodes < 1) throw InvalidArgument("monte-carlo simulation needs episodes >= 1");
  RolloutRequest request;
  for (int a = 0; a < n; ++a) {
    request.meta.agents.push_back(AgentDistribution{{task.combination.policy_ids[a]}, {1.0}});
  }
  request.num_episodes = task.num_episodes;
  request.seed = seed;
  EvaluationReport played = rollout(request, pools);
  played.source = EvaluationReport::Source::kSimulation;
  played.combination = task.combination;
  return played;
}

std::vector<SimulationTask> Evaluator::expand_axes(int agent, const PolicyPool& pool,
                                                   int num_episodes, SimulationMode mode) {
  std::lock_guard<std::mutex> lock(mu_);
  return table_.expand_axes(agent, pool, num_episodes, mode);
}

void Evaluator::record_simulation(const ProfileIndex& index, const EvaluationReport& report) {
  std::lock_guard<std::mutex> lock(mu_);
  table_.record_simulation(index, report.mean_returns, report.episodes);
}

PayoffTable Evaluator::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return table_;
}

StopDecision check_stop(const std::vector<EvaluationReport>& rollout_reports,
                        const std::vector<EvaluationReport>& training_reports,
                        std::int64_t updates_done, const StopperConfig& config) {
  (void)training_reports;
  if (config.plateau_window > 0 &&
      static_cast<int>(rollout_reports.size()) >= config.plateau_window) {
    const double first = rollout_reports[rollout_reports.size() - config.plateau_window].eval_rollout;
    const double last = rollout_reports.back().eval_rollout;
    const double improvement = (last - first) / std::max(std::abs(first), 1.0);
    if (improvement < config.plateau_delta) return {true, "plateau"};
  }
  if (config.train_budget > 0 && updates_done >= config.train_budget) {
    return {true, "train_budget"};
  }
  if (config.max_episodes > 0) {
    std::int64_t episodes = 0;
    for (const EvaluationReport& r : rollout_reports) episodes += r.episodes;
    if (episodes >= config.max_episodes) return {true, "episode_cap"};
  }
  return {};
}

}  // namespace pbmarl
