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

#ifndef PBMARL_GAME_GAME_TREE_HPP_
#define PBMARL_GAME_GAME_TREE_HPP_

#include <string>
#include <unordered_map>
#include <vector>

#include "pbmarl/game/game.hpp"

namespace pbmarl {

struct InfoSet {
  std::string key;
  std::vector<Action> legal_actions;
  std::vector<int> nodes;  // tree nodes belonging to this information set
};

struct TreeNode {
  int player = kTerminalPlayer;
  int infoset = -1;  // index into GameTree::infosets[player] at decision nodes
  int child_begin = 0;
  int child_count = 0;
  int returns_offset = -1;  // into GameTree::returns at terminal nodes
};

// Flattened, exhaustively enumerated game tree. Nodes are stored in preorder
// (every child has a larger id than its parent); node 0 is the root. Children
// of a decision node follow the information set's legal-action order.
class GameTree {
 public:
  explicit GameTree(const Game& game);

  int num_players() const { return num_players_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const TreeNode& node(int id) const { return nodes_[id]; }

  int child(const TreeNode& n, int i) const { return child_node_[n.child_begin + i]; }
  Action child_action(const TreeNode& n, int i) const {
    return child_action_[n.child_begin + i];
  }
  // Chance probability of the edge; 1 for decision nodes.
  double child_probability(const TreeNode& n, int i) const {
    return child_prob_[n.child_begin + i];
  }
  const double* returns(const TreeNode& n) const { return &returns_[n.returns_offset]; }

  const std::vector<InfoSet>& infosets(int player) const { return infosets_[player]; }
  // -1 when the key was never reached during enumeration.
  int find_infoset(int player, const std::string& key) const;

  int num_terminals() const { return num_terminals_; }

 private:
  int build(const State& state);

  int num_players_ = 0;
  int num_terminals_ = 0;
  std::vector<TreeNode> nodes_;
  std::vector<int> child_node_;
  std::vector<Action> child_action_;
  std::vector<double> child_prob_;
  std::vector<double> returns_;
  std::vector<std::vector<InfoSet>> infosets_;
  std::vector<std::unordered_map<std::string, int>> infoset_index_;
};

}  // namespace pbmarl

#endif  // PBMARL_GAME_GAME_TREE_HPP_
