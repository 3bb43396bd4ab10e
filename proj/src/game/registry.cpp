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

#include "pbmarl/game/games.hpp"

namespace pbmarl {

std::vector<std::string> registered_games() {
  return {"rock_paper_scissors", "matching_pennies", "matrix", "kuhn_poker", "leduc_poker",
          "synthetic"};
}

std::shared_ptr<const Game> create_game(const nlohmann::json& config) {
  if (!config.is_object() || !config.contains("name")) {
    throw InvalidArgument("game config needs a \"name\"");
  }
  const std::string name = config["name"].get<std::string>();
  if (name == "rock_paper_scissors") return make_matrix_game(rock_paper_scissors());
  if (name == "matching_pennies") return make_matrix_game(matching_pennies());
  if (name == "matrix") return make_matrix_game(parse_matrix_game(config));
  if (name == "kuhn_poker") return make_kuhn_poker();
  if (name == "leduc_poker") {
    LeducRules rules;
    rules.num_ranks = config.value("num_ranks", rules.num_ranks);
    rules.num_suits = config.value("num_suits", rules.num_suits);
    rules.ante = config.value("ante", rules.ante);
    rules.raise_sizes = config.value("raise_sizes", rules.raise_sizes);
    rules.max_raises = config.value("max_raises", rules.max_raises);
    return make_leduc_poker(rules);
  }
  if (name == "synthetic") {
    SyntheticParams params;
    params.episode_length = config.value("episode_length", params.episode_length);
    params.step_cost_us = config.value("step_cost_us", params.step_cost_us);
    params.sleep = config.value("sleep", params.sleep);
    return make_synthetic_game(params);
  }
  throw NotFound("unknown game \"" + name + "\"");
}

}  // namespace pbmarl
