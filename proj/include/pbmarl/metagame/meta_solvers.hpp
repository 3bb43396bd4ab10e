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

#ifndef PBMARL_METAGAME_META_SOLVERS_HPP_
#define PBMARL_METAGAME_META_SOLVERS_HPP_

#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "pbmarl/metagame/meta_game.hpp"

namespace pbmarl {

StrategyProfile uniform_profile(const std::vector<int>& shape);

// Simultaneous-update fictitious play. Every iteration each player plays a
// best response (lowest index on ties) to the opponents' empirical play so
// far (uniform before the first iteration); returns empirical frequencies.
StrategyProfile fictitious_play(const MetaGame& game, int iterations);

// Exact equilibrium of a two-player zero-sum game by linear programming.
// Throws InvalidArgument when the game has more players or is not zero-sum
// within `tolerance`.
StrategyProfile zero_sum_nash(const MetaGame& game, double tolerance = 1e-9);

struct AlphaRankConfig {
  int population_size = 50;   // m; fixation probability of a neutral mutant is 1/m
  double perturbation = 1e-6;  // uniform mutation mass mixed into every deviation
  double tolerance = 1e-10;    // residual target for the stationary distribution
};

struct AlphaRankResult {
  Eigen::SparseMatrix<double, Eigen::RowMajor> transition;  // row-stochastic
  Eigen::VectorXd stationary;                               // over flat profiles
  StrategyProfile marginals;
  double residual = 0.0;  // max |pi^T T - pi^T|
};

// Multi-population alpha-rank in the infinite-alpha limit. From each joint
// profile, a single player switches strategy with probability
// eta * rho, eta = 1 / sum_k(|S_k| - 1), where rho is 1 for a strictly
// better deviation, 0 for a worse one and 1/m for a neutral one; rho is then
// perturbed to (1 - eps) * rho + eps so the chain is ergodic.
AlphaRankResult alpha_rank(const MetaGame& game, const AlphaRankConfig& config = {});

}  // namespace pbmarl

#endif  // PBMARL_METAGAME_META_SOLVERS_HPP_
