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

#ifndef PBMARL_METAGAME_PAYOFF_TABLE_HPP_
#define PBMARL_METAGAME_PAYOFF_TABLE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbmarl/metagame/meta_game.hpp"
#include "pbmarl/metagame/meta_solvers.hpp"
#include "pbmarl/policy/population.hpp"

namespace pbmarl {

using ProfileIndex = std::vector<int>;

enum class EntryStatus { kAbsent, kPending, kFilled };
enum class SimulationMode { kMonteCarlo, kExact };

struct SimulationTask {
  PolicyCombination combination;
  ProfileIndex index;
  int num_episodes = 2000;  // ignored in exact mode
  SimulationMode mode = SimulationMode::kMonteCarlo;
};

struct PayoffEntry {
  std::vector<double> means;  // one per agent
  std::int64_t episodes = 0;
};

// Per-agent empirical payoffs over policy combinations. Axis i lists agent
// i's policies in pool order. Every index tuple is absent, pending
// (scheduled) or filled.
class PayoffTable {
 public:
  explicit PayoffTable(int num_agents);

  int num_agents() const { return static_cast<int>(axes_.size()); }
  std::vector<int> shape() const;
  const std::vector<PolicyId>& axis(int agent) const { return axes_.at(agent); }

  // Grows agent's axis by the pool's newest policy and schedules simulations
  // for every new cross-combination (marked pending).
  std::vector<SimulationTask> expand_axes(int agent, const PolicyPool& pool,
                                          int num_episodes = 2000,
                                          SimulationMode mode = SimulationMode::kMonteCarlo);

  // Merges a result by episode-count-weighted mean and marks it filled.
  void record_simulation(const ProfileIndex& index, const std::vector<double>& means,
                         std::int64_t episodes);
  void record_simulation(const PolicyCombination& combination, const std::vector<double>& means,
                         std::int64_t episodes) {
    record_simulation(index_of(combination), means, episodes);
  }

  // Marks all filled entries pending again (explicit refresh).
  std::vector<SimulationTask> refresh(int num_episodes, SimulationMode mode);

  EntryStatus status(const ProfileIndex& index) const;
  const PayoffEntry& entry(const ProfileIndex& index) const;
  ProfileIndex index_of(const PolicyCombination& combination) const;
  PolicyCombination combination_of(const ProfileIndex& index) const;
  std::vector<ProfileIndex> pending() const;
  // True when every tuple of the current shape is filled.
  bool complete() const;

  // Dense view; requires complete().
  MetaGame meta_game() const;

  // Tab-separated text, lexicographic by tuple.
  std::string dump() const;
  static PayoffTable parse_dump(const std::string& text);

 private:
  struct Cell {
    EntryStatus status = EntryStatus::kPending;
    // (means, episodes) contributions kept sorted so the merged mean does not
    // depend on arrival order.
    std::vector<std::pair<std::vector<double>, std::int64_t>> parts;
    PayoffEntry merged;
  };
  void check_index(const ProfileIndex& index) const;

  std::vector<std::vector<PolicyId>> axes_;
  std::map<ProfileIndex, Cell> cells_;
};

// Meta-solver selection.
struct MetaSolverConfig {
  // uniform | fictitious_play | alpha_rank | zero_sum_lp
  std::string name = "fictitious_play";
  int fictitious_play_iterations = 10000;
  AlphaRankConfig alpha_rank;
};

// Solves the restricted meta-game of a complete table.
MetaStrategy solve_meta(const PayoffTable& table, const MetaSolverConfig& solver);

StrategyProfile to_profile(const MetaStrategy& meta, const PayoffTable& table);
MetaStrategy to_meta_strategy(const StrategyProfile& profile, const PayoffTable& table);

// Expected payoff per agent under the product of `equilibrium`. With `brs`,
// each named agent's distribution is replaced by a point mass on its policy
// (the others keep following the equilibrium) and that agent's value is
// reported; unnamed agents get their equilibrium value.
std::vector<double> aggregate(const PayoffTable& table, const MetaStrategy& equilibrium,
                              const std::map<int, PolicyId>& brs = {});

}  // namespace pbmarl

#endif  // PBMARL_METAGAME_PAYOFF_TABLE_HPP_
