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

#include <algorithm>

#include "pbmarl/game/games.hpp"

namespace pbmarl {
namespace {

constexpr char kCardNames[] = {'J', 'Q', 'K'};
constexpr Action kPass = 0;
constexpr Action kBet = 1;

class KuhnState : public State {
 public:
  explicit KuhnState(std::shared_ptr<const Game> game) : State(std::move(game)) {}

  int current_player() const override {
    if (cards_.size() < 2) return kChancePlayer;
    if (terminal()) return kTerminalPlayer;
    return static_cast<int>(bets_.size() % 2);
  }

  std::vector<Action> legal_actions() const override {
    if (is_terminal()) return {};
    if (is_chance_node()) {
      std::vector<Action> out;
      for (const ChanceOutcome& o : chance_outcomes()) out.push_back(o.action);
      return out;
    }
    return {kPass, kBet};
  }

  std::vector<ChanceOutcome> chance_outcomes() const override {
    if (!is_chance_node()) return State::chance_outcomes();
    std::vector<ChanceOutcome> out;
    const std::int64_t remaining = 3 - static_cast<std::int64_t>(cards_.size());
    for (int c = 0; c < 3; ++c) {
      if (std::find(cards_.begin(), cards_.end(), c) == cards_.end()) {
        out.push_back({c, 1, remaining});
      }
    }
    return out;
  }

  std::vector<double> returns() const override {
    if (!is_terminal()) throw InvalidArgument("returns() on a non-terminal state");
    // Ante 1 each; a bet adds 1.
    const std::string& h = bets_;
    double winner_gain = 1.0;
    int winner;
    if (h == "bp") {
      winner = 0;
    } else if (h == "pbp") {
      winner = 1;
    } else {
      winner = cards_[0] > cards_[1] ? 0 : 1;
      if (h == "bb" || h == "pbb") winner_gain = 2.0;
    }
    std::vector<double> r(2, -winner_gain);
    r[winner] = winner_gain;
    return r;
  }

  std::string info_state_key(int player) const override {
    std::string key = std::to_string(player) + "|";
    if (player < static_cast<int>(cards_.size())) key += kCardNames[cards_[player]];
    key += "||";
    key += bets_;
    return key;
  }

  std::unique_ptr<State> clone() const override {
    return std::unique_ptr<State>(new KuhnState(*this));
  }

 protected:
  void apply_action(Action action) override {
    if (cards_.size() < 2) {
      cards_.push_back(action);
    } else {
      bets_.push_back(action == kBet ? 'b' : 'p');
    }
  }

 private:
  bool terminal() const {
    return bets_ == "pp" || bets_ == "bp" || bets_ == "bb" || bets_ == "pbp" ||
           bets_ == "pbb";
  }

  std::vector<int> cards_;
  std::string bets_;
};

class KuhnPoker : public Game {
 public:
  KuhnPoker() : Game(GameSpec{"kuhn_poker", 2, {2, 2}, 5, true}) {}

  std::unique_ptr<State> new_initial_state() const override {
    return std::make_unique<KuhnState>(shared_from_this());
  }
};

}  // namespace

std::shared_ptr<const Game> make_kuhn_poker() { return std::make_shared<KuhnPoker>(); }

}  // namespace pbmarl
