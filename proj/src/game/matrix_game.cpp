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

#include <cmath>
#include <numeric>

#include "pbmarl/game/games.hpp"

namespace pbmarl {
namespace {

class MatrixGame;

// Simultaneous moves are played as a sequential tree: player p moves without
// observing the actions of players 0..p-1.
class MatrixState : public State {
 public:
  explicit MatrixState(std::shared_ptr<const MatrixGame> game);

  int current_player() const override;
  std::vector<Action> legal_actions() const override;
  std::vector<double> returns() const override;
  std::string info_state_key(int player) const override;
  std::unique_ptr<State> clone() const override {
    return std::unique_ptr<State>(new MatrixState(*this));
  }

 protected:
  void apply_action(Action action) override { actions_.push_back(action); }

 private:
  const MatrixGame& matrix() const;
  std::vector<Action> actions_;
};

class MatrixGame : public Game {
 public:
  explicit MatrixGame(MatrixGameDefinition def, GameSpec spec)
      : Game(std::move(spec)), def_(std::move(def)) {}

  std::unique_ptr<State> new_initial_state() const override {
    return std::make_unique<MatrixState>(
        std::static_pointer_cast<const MatrixGame>(shared_from_this()));
  }

  const MatrixGameDefinition& definition() const { return def_; }

  std::size_t flat_index(const std::vector<Action>& joint) const {
    std::size_t idx = 0;
    for (std::size_t p = 0; p < joint.size(); ++p) idx = idx * def_.shape[p] + joint[p];
    return idx;
  }

 private:
  MatrixGameDefinition def_;
};

MatrixState::MatrixState(std::shared_ptr<const MatrixGame> game)
    : State(std::move(game)) {}

const MatrixGame& MatrixState::matrix() const {
  return static_cast<const MatrixGame&>(game());
}

int MatrixState::current_player() const {
  const int n = game().num_players();
  return static_cast<int>(actions_.size()) < n ? static_cast<int>(actions_.size())
                                               : kTerminalPlayer;
}

std::vector<Action> MatrixState::legal_actions() const {
  if (is_terminal()) return {};
  std::vector<Action> out(matrix().definition().shape[actions_.size()]);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<double> MatrixState::returns() const {
  if (!is_terminal()) throw InvalidArgument("returns() on a non-terminal state");
  const auto& def = matrix().definition();
  const std::size_t idx = matrix().flat_index(actions_);
  std::vector<double> out;
  out.reserve(def.payoffs.size());
  for (const auto& tensor : def.payoffs) out.push_back(tensor[idx]);
  return out;
}

std::string MatrixState::info_state_key(int player) const {
  return std::to_string(player) + "|||";
}

void infer_shape(const nlohmann::json& node, std::size_t depth, std::vector<int>& shape,
                 std::vector<double>& flat) {
  if (node.is_number()) {
    if (depth != shape.size()) throw InvalidArgument("matrix payoff tensor is not rectangular");
    flat.push_back(node.get<double>());
    return;
  }
  if (!node.is_array() || node.empty()) {
    throw InvalidArgument("matrix payoff tensor must contain nonempty lists of numbers");
  }
  if (depth == shape.size()) {
    shape.push_back(static_cast<int>(node.size()));
  } else if (depth > shape.size() || shape[depth] != static_cast<int>(node.size())) {
    throw InvalidArgument("matrix payoff rows have unequal length");
  }
  for (const auto& child : node) infer_shape(child, depth + 1, shape, flat);
}

}  // namespace

std::shared_ptr<const Game> make_matrix_game(MatrixGameDefinition def) {
  const std::size_t n = def.shape.size();
  if (n < 2) throw InvalidArgument("matrix game needs at least 2 players");
  if (def.payoffs.size() != n) {
    throw InvalidArgument("matrix game has " + std::to_string(def.payoffs.size()) +
                          " payoff tensors for " + std::to_string(n) + " players");
  }
  std::size_t cells = 1;
  for (int s : def.shape) {
    if (s < 1) throw InvalidArgument("matrix game action count must be positive");
    cells *= static_cast<std::size_t>(s);
  }
  bool zero_sum = true;
  for (const auto& tensor : def.payoffs) {
    if (tensor.size() != cells) {
      throw InvalidArgument("matrix payoff tensor has " + std::to_string(tensor.size()) +
                            " entries, expected " + std::to_string(cells));
    }
    for (double v : tensor) {
      if (!std::isfinite(v)) throw InvalidArgument("matrix payoff is not finite");
    }
  }
  for (std::size_t c = 0; c < cells; ++c) {
    double sum = 0.0;
    for (const auto& tensor : def.payoffs) sum += tensor[c];
    if (sum != 0.0) zero_sum = false;
  }
  GameSpec spec{def.name, static_cast<int>(n), def.shape, static_cast<int>(n), zero_sum};
  return std::make_shared<MatrixGame>(std::move(def), std::move(spec));
}

MatrixGameDefinition rock_paper_scissors() {
  MatrixGameDefinition def;
  def.name = "rock_paper_scissors";
  def.shape = {3, 3};
  // Actions: 0 rock, 1 paper, 2 scissors.
  std::vector<double> row = {0, -1, 1, 1, 0, -1, -1, 1, 0};
  std::vector<double> col(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) col[i] = -row[i];
  def.payoffs = {row, col};
  return def;
}

MatrixGameDefinition matching_pennies() {
  MatrixGameDefinition def;
  def.name = "matching_pennies";
  def.shape = {2, 2};
  // Player 0 is the matcher. Actions: 0 heads, 1 tails.
  def.payoffs = {{1, -1, -1, 1}, {-1, 1, 1, -1}};
  return def;
}

MatrixGameDefinition parse_matrix_game(const nlohmann::json& config) {
  if (!config.contains("payoffs") || !config["payoffs"].is_array()) {
    throw InvalidArgument("matrix game config needs a \"payoffs\" list");
  }
  MatrixGameDefinition def;
  def.name = config.value("id", std::string("matrix"));
  const auto& tensors = config["payoffs"];
  std::vector<int> declared;
  if (config.contains("shape")) declared = config["shape"].get<std::vector<int>>();
  for (const auto& tensor : tensors) {
    std::vector<int> shape;
    std::vector<double> flat;
    if (!declared.empty() && tensor.is_array() && !tensor.empty() && tensor[0].is_number()) {
      shape = declared;
      for (const auto& v : tensor) {
        if (!v.is_number()) throw InvalidArgument("flat payoff list must contain numbers");
        flat.push_back(v.get<double>());
      }
    } else {
      infer_shape(tensor, 0, shape, flat);
    }
    if (def.shape.empty()) {
      def.shape = shape;
    } else if (def.shape != shape) {
      throw InvalidArgument("payoff tensors of different players have different shapes");
    }
    def.payoffs.push_back(std::move(flat));
  }
  if (def.shape.size() != def.payoffs.size()) {
    throw InvalidArgument("payoff tensor rank " + std::to_string(def.shape.size()) +
                          " does not match player count " +
                          std::to_string(def.payoffs.size()));
  }
  return def;
}

}  // namespace pbmarl
