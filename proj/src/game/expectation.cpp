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

#include "pbmarl/game/expectation.hpp"

#include <cmath>

namespace pbmarl {

JointPolicy pure_joint(std::span<const BehaviorPolicy* const> policies) {
  JointPolicy joint;
  joint.reserve(policies.size());
  for (const BehaviorPolicy* p : policies) joint.push_back({{1.0, p}});
  return joint;
}

void check_distribution(std::span<const double> probs, std::size_t legal_count,
                        const std::string& context) {
  if (probs.size() != legal_count) {
    throw InvalidArgument("policy distribution at " + context + " has " +
                          std::to_string(probs.size()) + " entries but there are " +
                          std::to_string(legal_count) + " legal actions");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidArgument("policy distribution at " + context + " has a negative entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidArgument("policy distribution at " + context + " sums to " +
                          std::to_string(sum));
  }
}

std::vector<Eigen::MatrixXd> resolve_mixture(const GameTree& tree, int player,
                                             const PolicyMixture& mixture) {
  const auto& infosets = tree.infosets(player);
  std::vector<Eigen::MatrixXd> out(infosets.size());
  for (std::size_t s = 0; s < infosets.size(); ++s) {
    const InfoSet& info = infosets[s];
    Eigen::MatrixXd m(mixture.size(), info.legal_actions.size());
    for (std::size_t c = 0; c < mixture.size(); ++c) {
      const std::vector<double> probs =
          mixture[c].policy->action_probabilities(info.key, info.legal_actions);
      check_distribution(probs, info.legal_actions.size(), info.key);
      for (std::size_t a = 0; a < probs.size(); ++a) m(c, a) = probs[a];
    }
    out[s] = std::move(m);
  }
  return out;
}

namespace {

struct ExpectationWalk {
  const GameTree& tree;
  const std::vector<std::vector<Eigen::MatrixXd>>& resolved;
  std::vector<Eigen::VectorXd> reach;
  std::vector<double> totals;

  void visit(int id, double chance_reach) {
    const TreeNode& n = tree.node(id);
    if (n.player == kTerminalPlayer) {
      double w = chance_reach;
      for (const auto& r : reach) w *= r.sum();
      if (w == 0.0) return;
      const double* ret = tree.returns(n);
      for (std::size_t p = 0; p < totals.size(); ++p) totals[p] += w * ret[p];
      return;
    }
    if (n.player == kChancePlayer) {
      for (int i = 0; i < n.child_count; ++i) {
        visit(tree.child(n, i), chance_reach * tree.child_probability(n, i));
      }
      return;
    }
    const Eigen::MatrixXd& probs = resolved[n.player][n.infoset];
    const Eigen::VectorXd saved = reach[n.player];
    for (int i = 0; i < n.child_count; ++i) {
      reach[n.player] = saved.cwiseProduct(probs.col(i));
      if (reach[n.player].isZero(0.0)) continue;
      visit(tree.child(n, i), chance_reach);
    }
    reach[n.player] = saved;
  }
};

}  // namespace

std::vector<double> expected_returns(const Game& game, const JointPolicy& joint) {
  const int n = game.num_players();
  if (static_cast<int>(joint.size()) != n) {
    throw InvalidArgument("joint policy covers " + std::to_string(joint.size()) +
                          " players, game has " + std::to_string(n));
  }
  const GameTree& tree = game.tree();
  std::vector<std::vector<Eigen::MatrixXd>> resolved;
  std::vector<Eigen::VectorXd> reach;
  for (int p = 0; p < n; ++p) {
    if (joint[p].empty()) throw InvalidArgument("empty policy mixture for player " + std::to_string(p));
    resolved.push_back(resolve_mixture(tree, p, joint[p]));
    Eigen::VectorXd w(joint[p].size());
    for (std::size_t c = 0; c < joint[p].size(); ++c) w[c] = joint[p][c].weight;
    reach.push_back(std::move(w));
  }
  ExpectationWalk walk{tree, resolved, std::move(reach), std::vector<double>(n, 0.0)};
  walk.visit(0, 1.0);
  return walk.totals;
}

int sample_index(std::span<const double> probs, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = u(rng);
  int last_positive = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    if (r < probs[i]) return static_cast<int>(i);
    r -= probs[i];
  }
  if (last_positive < 0) throw InvalidArgument("cannot sample from a zero distribution");
  return last_positive;
}

EpisodeOutcome play_episode(const Game& game, std::span<const BehaviorPolicy* const> policies,
                            Rng& rng,
                            const std::function<void(const DecisionRecord&)>& on_decision) {
  std::unique_ptr<State> state = game.new_initial_state();
  EpisodeOutcome out;
  while (!state->is_terminal()) {
    if (state->is_chance_node()) {
      state = state->child(sample_chance_outcome(*state, rng));
    } else {
      const int p = state->current_player();
      const std::vector<Action> legal = state->legal_actions();
      const std::string key = state->info_state_key(p);
      const std::vector<double> probs = policies[p]->action_probabilities(key, legal);
      check_distribution(probs, legal.size(), key);
      const int idx = sample_index(probs, rng);
      if (on_decision) on_decision({p, key, idx, static_cast<int>(legal.size())});
      state = state->child(legal[idx]);
    }
    ++out.steps;
  }
  out.returns = state->returns();
  return out;
}

}  // namespace pbmarl
