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

#ifndef PBMARL_GAME_GAMES_HPP_
#define PBMARL_GAME_GAMES_HPP_

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pbmarl/game/game.hpp"

namespace pbmarl {

// N-player normal-form game. `payoffs[p]` is player p's payoff tensor stored
// row-major over the joint action (player 0's action is the slowest index).
struct MatrixGameDefinition {
  std::string name = "matrix";
  std::vector<int> shape;
  std::vector<std::vector<double>> payoffs;
};

// Leduc-style poker rule constants.
struct LeducRules {
  int num_ranks = 3;
  int num_suits = 2;
  int ante = 1;
  std::vector<int> raise_sizes = {2, 4};  // one entry per betting round
  int max_raises = 2;                     // per round
};

struct SyntheticParams {
  int episode_length = 10;
  int step_cost_us = 10;
  bool sleep = false;  // sleep instead of spinning for the step cost
};

std::shared_ptr<const Game> make_matrix_game(MatrixGameDefinition def);
std::shared_ptr<const Game> make_kuhn_poker();
std::shared_ptr<const Game> make_leduc_poker(LeducRules rules = {});
std::shared_ptr<const Game> make_synthetic_game(SyntheticParams params = {});

MatrixGameDefinition rock_paper_scissors();
MatrixGameDefinition matching_pennies();

// Parses a matrix game from its config form:
//   {"payoffs": [<player 0 tensor>, <player 1 tensor>, ...]}
// where each tensor is either nested lists (shape inferred, must be
// rectangular) or a flat list accompanied by "shape".
MatrixGameDefinition parse_matrix_game(const nlohmann::json& config);

// Game registry. `config` is the "game" section of an experiment config and
// must contain "name"; other keys are game parameters.
std::shared_ptr<const Game> create_game(const nlohmann::json& config);
std::vector<std::string> registered_games();

}  // namespace pbmarl

#endif  // PBMARL_GAME_GAMES_HPP_
