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

#include "pbmarl/metagame/meta_game.hpp"

#include "pbmarl/common.hpp"

namespace pbmarl {

Eigen::Index MetaGame::num_profiles() const {
  Eigen::Index n = 1;
  for (int s : shape) n *= s;
  return n;
}

Eigen::Index MetaGame::flat_index(std::span<const int> profile) const {
  Eigen::Index idx = 0;
  for (std::size_t p = 0; p < shape.size(); ++p) idx = idx * shape[p] + profile[p];
  return idx;
}

std::vector<int> MetaGame::profile_of(Eigen::Index flat) const {
  std::vector<int> profile(shape.size());
  for (int p = num_players() - 1; p >= 0; --p) {
    profile[p] = static_cast<int>(flat % shape[p]);
    flat /= shape[p];
  }
  return profile;
}

Eigen::MatrixXd MetaGame::matrix(int player) const {
  if (num_players() != 2) throw InvalidArgument("matrix() needs a two-player meta-game");
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(payoffs[player].data(), shape[0], shape[1]);
}

MetaGame MetaGame::from_matrices(const Eigen::MatrixXd& row_payoffs,
                                 const Eigen::MatrixXd& col_payoffs) {
  if (row_payoffs.rows() != col_payoffs.rows() || row_payoffs.cols() != col_payoffs.cols()) {
    throw InvalidArgument("payoff matrices differ in shape");
  }
  MetaGame g;
  g.shape = {static_cast<int>(row_payoffs.rows()), static_cast<int>(row_payoffs.cols())};
  for (const Eigen::MatrixXd* m : {&row_payoffs, &col_payoffs}) {
    Eigen::VectorXd flat(m->size());
    for (Eigen::Index i = 0; i < m->rows(); ++i) {
      for (Eigen::Index j = 0; j < m->cols(); ++j) flat[i * m->cols() + j] = (*m)(i, j);
    }
    g.payoffs.push_back(std::move(flat));
  }
  return g;
}

Eigen::VectorXd action_values(const MetaGame& game, int player, const StrategyProfile& profile) {
  if (game.num_players() == 2) {
    const Eigen::MatrixXd m = game.matrix(player);
    return player == 0 ? Eigen::VectorXd(m * profile[1])
                       : Eigen::VectorXd(m.transpose() * profile[0]);
  }
  Eigen::VectorXd values = Eigen::VectorXd::Zero(game.shape[player]);
  const Eigen::Index n = game.num_profiles();
  for (Eigen::Index flat = 0; flat < n; ++flat) {
    const std::vector<int> s = game.profile_of(flat);
    double w = 1.0;
    for (int q = 0; q < game.num_players() && w != 0.0; ++q) {
      if (q != player) w *= profile[q][s[q]];
    }
    values[s[player]] += w * game.payoffs[player][flat];
  }
  return values;
}

Eigen::VectorXd expected_payoffs(const MetaGame& game, const StrategyProfile& profile) {
  Eigen::VectorXd out(game.num_players());
  for (int p = 0; p < game.num_players(); ++p) {
    out[p] = profile[p].dot(action_values(game, p, profile));
  }
  return out;
}

double meta_nash_conv(const MetaGame& game, const StrategyProfile& profile) {
  double total = 0.0;
  for (int p = 0; p < game.num_players(); ++p) {
    const Eigen::VectorXd v = action_values(game, p, profile);
    total += v.maxCoeff() - profile[p].dot(v);
  }
  return total;
}

}  // namespace pbmarl
