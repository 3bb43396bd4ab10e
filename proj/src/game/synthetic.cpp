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

#include <chrono>
#include <thread>

#include "pbmarl/game/games.hpp"

namespace pbmarl {
namespace {

// Constant-cost environment used for throughput measurements: two players
// alternate binary actions for a fixed number of steps; payoffs are zero.
class SyntheticGame : public Game {
 public:
  explicit SyntheticGame(SyntheticParams params)
      : Game(GameSpec{"synthetic", 2, {2, 2}, params.episode_length, true}),
        params_(params) {}

  std::unique_ptr<State> new_initial_state() const override;
  const SyntheticParams& params() const { return params_; }

 private:
  SyntheticParams params_;
};

class SyntheticState : public State {
 public:
  explicit SyntheticState(std::shared_ptr<const Game> game) : State(std::move(game)) {}

  int current_player() const override {
    return steps_ >= params().episode_length ? kTerminalPlayer : steps_ % 2;
  }
  std::vector<Action> legal_actions() const override {
    if (is_terminal()) return {};
    return {0, 1};
  }
  std::vector<double> returns() const override {
    if (!is_terminal()) throw InvalidArgument("returns() on a non-terminal state");
    return {0.0, 0.0};
  }
  std::string info_state_key(int player) const override {
    return std::to_string(player) + "|||" + std::to_string(steps_);
  }
  std::unique_ptr<State> clone() const override {
    return std::unique_ptr<State>(new SyntheticState(*this));
  }

 protected:
  void apply_action(Action) override {
    const auto cost = std::chrono::microseconds(params().step_cost_us);
    if (params().sleep) {
      std::this_thread::sleep_for(cost);
    } else {
      const auto until = std::chrono::steady_clock::now() + cost;
      while (std::chrono::steady_clock::now() < until) {
      }
    }
    ++steps_;
  }

 private:
  const SyntheticParams& params() const {
    return static_cast<const SyntheticGame&>(game()).params();
  }
  int steps_ = 0;
};

std::unique_ptr<State> SyntheticGame::new_initial_state() const {
  return std::make_unique<SyntheticState>(shared_from_this());
}

}  // namespace

std::shared_ptr<const Game> make_synthetic_game(SyntheticParams params) {
  if (params.episode_length < 1 || params.step_cost_us < 0) {
    throw InvalidArgument("synthetic: episode_length must be >= 1 and step_cost_us >= 0");
  }
  return std::make_shared<SyntheticGame>(params);
}

}  // namespace pbmarl
