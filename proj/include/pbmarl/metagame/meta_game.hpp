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

#ifndef PBMARL_METAGAME_META_GAME_HPP_
#define PBMARL_METAGAME_META_GAME_HPP_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace pbmarl {

// Dense normal-form game over population indices. Payoffs of every player are
// stored row-major over the joint profile (agent 0 is the slowest index).
struct MetaGame {
  std::vector<int> shape;
  std::vector<Eigen::VectorXd> payoffs;

  int num_players() const { return static_cast<int>(shape.size()); }
  Eigen::Index num_profiles() const;
  Eigen::Index flat_index(std::span<const int> profile) const;
  std::vector<int> profile_of(Eigen::Index flat) const;

  // Two-player games only: payoff matrix of `player` (rows: agent 0).
  Eigen::MatrixXd matrix(int player) const;

  static MetaGame from_matrices(const Eigen::MatrixXd& row_payoffs,
                                const Eigen::MatrixXd& col_payoffs);
};

// Per player, a distribution over that player's strategies.
using StrategyProfile = std::vector<Eigen::VectorXd>;

// Expected payoff of each of `player`'s pure strategies when the others play
// `profile`.
Eigen::VectorXd action_values(const MetaGame& game, int player, const StrategyProfile& profile);

// Expected payoff of every player under the product distribution.
Eigen::VectorXd expected_payoffs(const MetaGame& game, const StrategyProfile& profile);

// Sum over players of (best pure deviation value - current value).
double meta_nash_conv(const MetaGame& game, const StrategyProfile& profile);

}  // namespace pbmarl

#endif  // PBMARL_METAGAME_META_GAME_HPP_
