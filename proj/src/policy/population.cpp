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

#include "pbmarl/policy/population.hpp"

#include <algorithm>
#include <cmath>

namespace pbmarl {

PolicyId PolicyPool::next_policy_id() const {
  return agent_name(agent_) + "/policy_" + std::to_string(ids_.size());
}

PolicyId PolicyPool::extend(TabularPolicy seed) {
  if (seed.id().empty()) seed.set_id(next_policy_id());
  const PolicyId id = seed.id();
  if (contains(id)) throw InvalidArgument("duplicate policy id " + id);
  index_.emplace(id, ids_.size());
  ids_.push_back(id);
  policies_.push_back(std::make_shared<const TabularPolicy>(std::move(seed)));
  return id;
}

std::size_t PolicyPool::index_of(const PolicyId& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw NotFound("policy " + id + " is not in " + agent_name(agent_) + "'s pool");
  return it->second;
}

std::shared_ptr<const TabularPolicy> PolicyPool::get(const PolicyId& id) const {
  return policies_[index_of(id)];
}

void PolicyPool::replace(const PolicyId& id, TabularPolicy policy) {
  const std::size_t i = index_of(id);
  if (is_frozen(id)) throw InvalidArgument("policy " + id + " is frozen");
  policy.set_id(id);
  policies_[i] = std::make_shared<const TabularPolicy>(std::move(policy));
}

void PolicyPool::freeze(const PolicyId& id) {
  const std::size_t i = index_of(id);
  if (frozen_.insert(id).second && policies_[i]->trainable()) {
    TabularPolicy copy = *policies_[i];
    copy.set_trainable(false);
    policies_[i] = std::make_shared<const TabularPolicy>(std::move(copy));
  }
}

PoolMapping PoolMapping::per_agent(int num_agents) {
  PoolMapping m;
  for (int a = 0; a < num_agents; ++a) m.pool_of_agent.push_back(a);
  return m;
}

PoolMapping PoolMapping::shared(int num_agents) {
  return PoolMapping{std::vector<int>(num_agents, 0)};
}

int PoolMapping::num_pools() const {
  if (pool_of_agent.empty()) return 0;
  return *std::max_element(pool_of_agent.begin(), pool_of_agent.end()) + 1;
}

void validate_combination(const PolicyCombination& combination,
                          const std::vector<PolicyPool>& pools) {
  if (combination.policy_ids.size() != pools.size()) {
    throw InvalidArgument("policy combination covers " +
                          std::to_string(combination.policy_ids.size()) + " agents, expected " +
                          std::to_string(pools.size()));
  }
  for (std::size_t a = 0; a < pools.size(); ++a) {
    if (!pools[a].contains(combination.policy_ids[a])) {
      throw NotFound("policy " + combination.policy_ids[a] + " is not in " +
                     agent_name(static_cast<int>(a)) + "'s pool");
    }
  }
}

double AgentDistribution::probability_of(const PolicyId& id) const {
  for (std::size_t i = 0; i < policy_ids.size(); ++i) {
    if (policy_ids[i] == id) return probs[i];
  }
  return 0.0;
}

void validate_meta_strategy(const MetaStrategy& meta, const std::vector<PolicyPool>& pools) {
  if (meta.agents.size() != pools.size()) {
    throw InvalidArgument("meta-strategy covers " + std::to_string(meta.agents.size()) +
                          " agents, expected " + std::to_string(pools.size()));
  }
  for (std::size_t a = 0; a < pools.size(); ++a) {
    const AgentDistribution& d = meta.agents[a];
    if (d.policy_ids.size() != d.probs.size()) {
      throw InvalidArgument("meta-strategy ids and probabilities differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < d.probs.size(); ++i) {
      if (!(d.probs[i] >= 0.0) || !std::isfinite(d.probs[i])) {
        throw InvalidArgument("meta-strategy has a negative probability for " + d.policy_ids[i]);
      }
      if (!pools[a].contains(d.policy_ids[i])) {
        throw InvalidArgument("meta-strategy references " + d.policy_ids[i] +
                              " outside the agent's pool");
      }
      sum += d.probs[i];
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InvalidArgument("meta-strategy for " + agent_name(static_cast<int>(a)) +
                            " sums to " + std::to_string(sum));
    }
  }
}

MetaStrategy uniform_meta_strategy(const std::vector<PolicyPool>& pools) {
  MetaStrategy meta;
  for (const PolicyPool& pool : pools) {
    if (pool.empty()) throw InvalidArgument("uniform meta-strategy over an empty pool");
    meta.agents.push_back(
        {pool.ids(), std::vector<double>(pool.size(), 1.0 / static_cast<double>(pool.size()))});
  }
  return meta;
}

MetaStrategy align_to_pools(const MetaStrategy& meta, const std::vector<PolicyPool>& pools) {
  MetaStrategy out;
  for (std::size_t a = 0; a < pools.size(); ++a) {
    AgentDistribution d{pools[a].ids(), std::vector<double>(pools[a].size(), 0.0)};
    const AgentDistribution& src = meta.agents.at(a);
    for (std::size_t i = 0; i < src.policy_ids.size(); ++i) {
      d.probs[pools[a].index_of(src.policy_ids[i])] += src.probs[i];
    }
    out.agents.push_back(std::move(d));
  }
  return out;
}

PolicyCombination sample_combination(const MetaStrategy& meta,
                                     const std::map<int, PolicyId>& overrides, Rng& rng) {
  for (const auto& [agent, id] : overrides) {
    if (agent < 0 || agent >= static_cast<int>(meta.agents.size())) {
      throw InvalidArgument("override for unknown agent " + std::to_string(agent));
    }
  }
  PolicyCombination combo;
  combo.policy_ids.resize(meta.agents.size());
  for (std::size_t a = 0; a < meta.agents.size(); ++a) {
    if (const auto it = overrides.find(static_cast<int>(a)); it != overrides.end()) {
      combo.policy_ids[a] = it->second;
      continue;
    }
    const AgentDistribution& d = meta.agents[a];
    double total = 0.0;
    for (double p : d.probs) total += p;
    if (!(total > 0.0)) {
      throw InvalidArgument("meta-strategy for " + agent_name(static_cast<int>(a)) +
                            " has zero total mass");
    }
    std::uniform_real_distribution<double> u(0.0, total);
    double r = u(rng);
    std::size_t pick = d.probs.size() - 1;
    for (std::size_t i = 0; i < d.probs.size(); ++i) {
      if (d.probs[i] <= 0.0) continue;
      pick = i;
      if (r < d.probs[i]) break;
      r -= d.probs[i];
    }
    combo.policy_ids[a] = d.policy_ids[pick];
  }
  return combo;
}

}  // namespace pbmarl
