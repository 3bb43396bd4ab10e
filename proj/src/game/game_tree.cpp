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

#include "pbmarl/game/game_tree.hpp"

#include <cmath>

namespace pbmarl {

GameTree::GameTree(const Game& game)
    : num_players_(game.num_players()),
      infosets_(game.num_players()),
      infoset_index_(game.num_players()) {
  build(*game.new_initial_state());
}

int GameTree::find_infoset(int player, const std::string& key) const {
  const auto it = infoset_index_.at(player).find(key);
  return it == infoset_index_[player].end() ? -1 : it->second;
}

int GameTree::build(const State& state) {
  const int id = num_nodes();
  nodes_.emplace_back();
  const int player = state.current_player();
  nodes_[id].player = player;

  if (player == kTerminalPlayer) {
    const std::vector<double> r = state.returns();
    if (static_cast<int>(r.size()) != num_players_) {
      throw InvalidArgument("terminal payoff vector has wrong length at " +
                            state.history_string());
    }
    if (state.game().spec().zero_sum) {
      double sum = 0.0;
      for (double v : r) sum += v;
      if (std::abs(sum) > 1e-12) {
        throw InvalidArgument("zero-sum game has nonzero payoff sum at " +
                              state.history_string());
      }
    }
    nodes_[id].returns_offset = static_cast<int>(returns_.size());
    returns_.insert(returns_.end(), r.begin(), r.end());
    ++num_terminals_;
    return id;
  }

  std::vector<Action> actions;
  std::vector<double> probs;
  if (player == kChancePlayer) {
    for (const ChanceOutcome& o : state.chance_outcomes()) {
      actions.push_back(o.action);
      probs.push_back(o.probability());
    }
  } else {
    actions = state.legal_actions();
    probs.assign(actions.size(), 1.0);
    const std::string key = state.info_state_key(player);
    auto [it, inserted] = infoset_index_[player].try_emplace(
        key, static_cast<int>(infosets_[player].size()));
    if (inserted) {
      infosets_[player].push_back({key, actions, {}});
    } else if (infosets_[player][it->second].legal_actions != actions) {
      throw InvalidArgument("information set " + key +
                            " has inconsistent legal actions");
    }
    infosets_[player][it->second].nodes.push_back(id);
    nodes_[id].infoset = it->second;
  }

  const int begin = static_cast<int>(child_node_.size());
  const int count = static_cast<int>(actions.size());
  nodes_[id].child_begin = begin;
  nodes_[id].child_count = count;
  child_node_.resize(begin + count);
  child_action_.insert(child_action_.end(), actions.begin(), actions.end());
  child_prob_.insert(child_prob_.end(), probs.begin(), probs.end());
  for (int i = 0; i < count; ++i) {
    const int c = build(*state.child(actions[i]));
    child_node_[begin + i] = c;
  }
  return id;
}

}  // namespace pbmarl
