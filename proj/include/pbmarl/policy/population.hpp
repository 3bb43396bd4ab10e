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

#ifndef PBMARL_POLICY_POPULATION_HPP_
#define PBMARL_POLICY_POPULATION_HPP_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "pbmarl/common.hpp"
#include "pbmarl/policy/tabular_policy.hpp"

namespace pbmarl {

using PolicyId = std::string;

// The population of one agent. Insertion order is preserved and the pool
// index of a policy is its payoff-table axis index.
class PolicyPool {
 public:
  explicit PolicyPool(int agent = 0) : agent_(agent) {}

  int agent() const { return agent_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  // Fresh id for the next policy: "agent_<a>/policy_<n>".
  PolicyId next_policy_id() const;

  // Appends `seed` as the last element and returns its id. Throws on a
  // duplicate id. An empty id is replaced by next_policy_id().
  PolicyId extend(TabularPolicy seed);

  bool contains(const PolicyId& id) const { return index_.count(id) != 0; }
  std::size_t index_of(const PolicyId& id) const;
  const PolicyId& id_at(std::size_t index) const { return ids_.at(index); }
  const std::vector<PolicyId>& ids() const { return ids_; }

  std::shared_ptr<const TabularPolicy> get(const PolicyId& id) const;
  std::shared_ptr<const TabularPolicy> at(std::size_t index) const { return policies_.at(index); }

  // Replaces the parameters of a policy that is not frozen. The id is kept.
  void replace(const PolicyId& id, TabularPolicy policy);
  void freeze(const PolicyId& id);
  bool is_frozen(const PolicyId& id) const { return frozen_.count(id) != 0; }
  const std::set<PolicyId>& frozen() const { return frozen_; }

 private:
  int agent_;
  std::vector<PolicyId> ids_;
  std::vector<std::shared_ptr<const TabularPolicy>> policies_;
  std::unordered_map<PolicyId, std::size_t> index_;
  std::set<PolicyId> frozen_;
};

// Agent -> pool assignment. The default gives every agent its own pool.
struct PoolMapping {
  std::vector<int> pool_of_agent;

  static PoolMapping per_agent(int num_agents);
  static PoolMapping shared(int num_agents);
  int num_pools() const;
};

// One pure policy per agent.
struct PolicyCombination {
  std::vector<PolicyId> policy_ids;  // indexed by agent

  bool operator==(const PolicyCombination&) const = default;
};

void validate_combination(const PolicyCombination& combination,
                          const std::vector<PolicyPool>& pools);

// A distribution over one agent's pool.
struct AgentDistribution {
  std::vector<PolicyId> policy_ids;
  std::vector<double> probs;

  double probability_of(const PolicyId& id) const;
};

// Per-agent distributions over policy pools.
struct MetaStrategy {
  std::vector<AgentDistribution> agents;

  std::size_t num_agents() const { return agents.size(); }
};

// Nonnegative, sums to 1 within 1e-9, supported on the agent's pool.
void validate_meta_strategy(const MetaStrategy& meta, const std::vector<PolicyPool>& pools);

MetaStrategy uniform_meta_strategy(const std::vector<PolicyPool>& pools);

// Same distributions expressed over the full pools (missing ids get 0).
MetaStrategy align_to_pools(const MetaStrategy& meta, const std::vector<PolicyPool>& pools);

// Overridden agents get their forced policy; the others are drawn
// independently from `meta`.
PolicyCombination sample_combination(const MetaStrategy& meta,
                                     const std::map<int, PolicyId>& overrides, Rng& rng);

}  // namespace pbmarl

#endif  // PBMARL_POLICY_POPULATION_HPP_
