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

#ifndef PBMARL_GAME_GAME_HPP_
#define PBMARL_GAME_GAME_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pbmarl/common.hpp"

namespace pbmarl {

using Action = int;

inline constexpr int kChancePlayer = -1;
inline constexpr int kTerminalPlayer = -2;

// A chance outcome with an exactly representable rational probability.
struct ChanceOutcome {
  Action action;
  std::int64_t numerator;
  std::int64_t denominator;

  double probability() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

struct GameSpec {
  std::string game_id;
  int num_players = 2;
  // Size of each player's action space; legal actions are always a subset of
  // [0, num_actions[p]).
  std::vector<int> num_actions;
  int max_episode_length = 0;
  bool zero_sum = true;
};

struct HistoryEntry {
  int player;  // acting player or kChancePlayer
  Action action;
  bool operator==(const HistoryEntry&) const = default;
};

class Game;
class GameTree;

// Immutable snapshot of a game position. `child` returns a new state and
// leaves this one untouched.
class State {
 public:
  virtual ~State() = default;

  virtual int current_player() const = 0;
  bool is_terminal() const { return current_player() == kTerminalPlayer; }
  bool is_chance_node() const { return current_player() == kChancePlayer; }

  // Decision nodes: the acting player's legal actions, sorted ascending.
  // Chance nodes: the outcome ids. Terminal: empty.
  virtual std::vector<Action> legal_actions() const = 0;
  virtual std::vector<ChanceOutcome> chance_outcomes() const;

  // Payoff vector of length num_players. Only valid at terminal states.
  virtual std::vector<double> returns() const = 0;

  // Perfect-recall key of what `player` has observed so far.
  virtual std::string info_state_key(int player) const = 0;

  virtual std::unique_ptr<State> clone() const = 0;

  // Validates `action` against legal_actions() and returns the successor.
  std::unique_ptr<State> child(Action action) const;

  const std::vector<HistoryEntry>& history() const { return history_; }
  const Game& game() const { return *game_; }
  std::string history_string() const;

 protected:
  explicit State(std::shared_ptr<const Game> game) : game_(std::move(game)) {}
  State(const State&) = default;

  virtual void apply_action(Action action) = 0;

 private:
  std::shared_ptr<const Game> game_;
  std::vector<HistoryEntry> history_;
};

// Free-function form of State::child.
std::unique_ptr<State> step(const State& state, Action action);

// Samples a chance outcome from `state` (must be a chance node).
Action sample_chance_outcome(const State& state, Rng& rng);

// Immutable game definition. Instances are created through create_game and
// are safe to share across threads.
class Game : public std::enable_shared_from_this<Game> {
 public:
  virtual ~Game();

  const GameSpec& spec() const { return spec_; }
  int num_players() const { return spec_.num_players; }

  virtual std::unique_ptr<State> new_initial_state() const = 0;

  // Fully enumerated game tree, built on first use.
  const GameTree& tree() const;

 protected:
  explicit Game(GameSpec spec);

 private:
  GameSpec spec_;
  mutable std::once_flag tree_once_;
  mutable std::unique_ptr<GameTree> tree_;
};

}  // namespace pbmarl

#endif  // PBMARL_GAME_GAME_HPP_
