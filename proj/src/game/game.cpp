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

#include "pbmarl/game/game.hpp"

#include <algorithm>
#include <numeric>

#include "pbmarl/game/game_tree.hpp"

namespace pbmarl {

std::vector<ChanceOutcome> State::chance_outcomes() const {
  throw InvalidArgument("chance_outcomes() called on a non-chance state");
}

std::unique_ptr<State> State::child(Action action) const {
  if (is_terminal()) {
    throw InvalidArgument("cannot step a terminal state (history " +
                          history_string() + ")");
  }
  const std::vector<Action> legal = legal_actions();
  if (!std::binary_search(legal.begin(), legal.end(), action)) {
    throw InvalidArgument("illegal action " + std::to_string(action) +
                          " at history " + history_string());
  }
  std::unique_ptr<State> next = clone();
  const int player = current_player();
  next->apply_action(action);
  next->history_.push_back({player, action});
  return next;
}

std::string State::history_string() const {
  std::string out;
  for (const HistoryEntry& h : history_) {
    if (!out.empty()) out += ' ';
    out += (h.player == kChancePlayer ? "c" : std::to_string(h.player));
    out += ':';
    out += std::to_string(h.action);
  }
  return out;
}

std::unique_ptr<State> step(const State& state, Action action) {
  return state.child(action);
}

Action sample_chance_outcome(const State& state, Rng& rng) {
  const std::vector<ChanceOutcome> outcomes = state.chance_outcomes();
  // Sampling on the common denominator keeps the draw exact.
  std::int64_t denom = 1;
  for (const ChanceOutcome& o : outcomes) denom = std::lcm(denom, o.denominator);
  std::uniform_int_distribution<std::int64_t> dist(0, denom - 1);
  std::int64_t r = dist(rng);
  for (const ChanceOutcome& o : outcomes) {
    const std::int64_t w = o.numerator * (denom / o.denominator);
    if (r < w) return o.action;
    r -= w;
  }
  throw InvalidArgument("chance outcome probabilities do not sum to 1");
}

Game::Game(GameSpec spec) : spec_(std::move(spec)) {}

Game::~Game() = default;

const GameTree& Game::tree() const {
  std::call_once(tree_once_, [this] { tree_ = std::make_unique<GameTree>(*this); });
  return *tree_;
}

}  // namespace pbmarl
