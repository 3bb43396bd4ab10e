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

constexpr Action kFold = 0;
constexpr Action kCall = 1;
constexpr Action kRaise = 2;
constexpr char kRankNames[] = "23456789TJQKA";
constexpr char kSuitNames[] = "shdc";

class LeducPoker : public Game {
 public:
  LeducPoker(LeducRules rules, GameSpec spec) : Game(std::move(spec)), rules_(std::move(rules)) {}

  std::unique_ptr<State> new_initial_state() const override;
  const LeducRules& rules() const { return rules_; }

  int num_cards() const { return rules_.num_ranks * rules_.num_suits; }
  int rank(int card) const { return card / rules_.num_suits; }
  std::string card_name(int card) const {
    std::string s;
    s += kRankNames[std::max(0, 12 - rules_.num_ranks) + rank(card)];
    s += kSuitNames[card % rules_.num_suits];
    return s;
  }

 private:
  LeducRules rules_;
};

class LeducState : public State {
 public:
  explicit LeducState(std::shared_ptr<const Game> game) : State(std::move(game)) {
    contrib_[0] = contrib_[1] = rules().ante;
  }

  int current_player() const override {
    if (folded_ >= 0 || round_ == 2) return kTerminalPlayer;
    if (dealt_.size() < 2 || (round_ == 1 && dealt_.size() < 3)) return kChancePlayer;
    return to_act_;
  }

  std::vector<Action> legal_actions() const override {
    const int p = current_player();
    if (p == kTerminalPlayer) return {};
    if (p == kChancePlayer) {
      std::vector<Action> out;
      for (const ChanceOutcome& o : chance_outcomes()) out.push_back(o.action);
      return out;
    }
    std::vector<Action> out;
    if (contrib_[p] < contrib_[1 - p]) out.push_back(kFold);
    out.push_back(kCall);
    if (raises_ < rules().max_raises) out.push_back(kRaise);
    return out;
  }

  std::vector<ChanceOutcome> chance_outcomes() const override {
    if (!is_chance_node()) return State::chance_outcomes();
    const int n = leduc().num_cards();
    const std::int64_t remaining = n - static_cast<std::int64_t>(dealt_.size());
    std::vector<ChanceOutcome> out;
    for (int c = 0; c < n; ++c) {
      if (std::find(dealt_.begin(), dealt_.end(), c) == dealt_.end()) {
        out.push_back({c, 1, remaining});
      }
    }
    return out;
  }

  std::vector<double> returns() const override {
    if (!is_terminal()) throw InvalidArgument("returns() on a non-terminal state");
    std::vector<double> r(2, 0.0);
    int winner = -1;
    if (folded_ >= 0) {
      winner = 1 - folded_;
    } else {
      const int pub = leduc().rank(dealt_[2]);
      const int r0 = leduc().rank(dealt_[0]);
      const int r1 = leduc().rank(dealt_[1]);
      const bool pair0 = r0 == pub;
      const bool pair1 = r1 == pub;
      if (pair0 != pair1) {
        winner = pair0 ? 0 : 1;
      } else if (r0 != r1) {
        winner = r0 > r1 ? 0 : 1;
      }
    }
    if (winner >= 0) {
      const double won = contrib_[1 - winner];
      r[winner] = won;
      r[1 - winner] = -won;
    }
    return r;
  }

  std::string info_state_key(int player) const override {
    std::string key = std::to_string(player) + "|";
    if (player < static_cast<int>(dealt_.size())) key += leduc().card_name(dealt_[player]);
    key += '|';
    if (dealt_.size() > 2) key += leduc().card_name(dealt_[2]);
    key += '|';
    key += bets_;
    return key;
  }

  std::unique_ptr<State> clone() const override {
    return std::unique_ptr<State>(new LeducState(*this));
  }

 protected:
  void apply_action(Action action) override {
    if (is_chance_node()) {
      dealt_.push_back(action);
      return;
    }
    const int p = to_act_;
    ++actions_in_round_;
    if (action == kFold) {
      bets_ += 'f';
      folded_ = p;
      return;
    }
    if (action == kRaise) {
      bets_ += 'r';
      contrib_[p] = contrib_[1 - p] + rules().raise_sizes[round_];
      ++raises_;
      to_act_ = 1 - p;
      return;
    }
    bets_ += 'c';
    contrib_[p] = contrib_[1 - p];
    if (actions_in_round_ >= 2) {
      ++round_;
      to_act_ = 0;
      raises_ = 0;
      actions_in_round_ = 0;
      if (round_ == 1) bets_ += '/';
    } else {
      to_act_ = 1 - p;
    }
  }

 private:
  const LeducPoker& leduc() const { return static_cast<const LeducPoker&>(game()); }
  const LeducRules& rules() const { return leduc().rules(); }

  std::vector<int> dealt_;  // p0 private, p1 private, public
  std::string bets_;        // rounds separated by '/'
  int contrib_[2];
  int round_ = 0;
  int to_act_ = 0;
  int raises_ = 0;
  int actions_in_round_ = 0;
  int folded_ = -1;
};

std::unique_ptr<State> LeducPoker::new_initial_state() const {
  return std::make_unique<LeducState>(shared_from_this());
}

}  // namespace

std::shared_ptr<const Game> make_leduc_poker(LeducRules rules) {
  if (rules.num_ranks < 2 || rules.num_ranks > 13 || rules.num_suits < 1 ||
      rules.num_suits > 4 || rules.num_ranks * rules.num_suits < 3) {
    throw InvalidArgument("leduc_poker: unsupported deck size");
  }
  if (rules.raise_sizes.size() != 2 || rules.ante < 1 || rules.max_raises < 0) {
    throw InvalidArgument("leduc_poker: raise_sizes needs one entry per round (2)");
  }
  const int max_len = 3 + 2 * (rules.max_raises + 2);
  GameSpec spec{"leduc_poker", 2, {3, 3}, max_len, true};
  return std::make_shared<LeducPoker>(std::move(rules), std::move(spec));
}

}  // namespace pbmarl
