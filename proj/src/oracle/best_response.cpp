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

#include "pbmarl/oracle/best_response.hpp"

#include <cmath>
#include <limits>

#include "pbmarl/game/game_tree.hpp"

namespace pbmarl {
namespace {

class BestResponseSolver {
 public:
  BestResponseSolver(const GameTree& tree, int agent, const JointPolicy& opponents)
      : tree_(tree),
        agent_(agent),
        terminal_weight_(tree.num_nodes(), 0.0),
        value_(tree.num_nodes(), std::numeric_limits<double>::quiet_NaN()),
        choice_(tree.infosets(agent).size(), -1) {
    const int n = tree.num_players();
    resolved_.resize(n);
    reach_.resize(n);
    for (int p = 0; p < n; ++p) {
      if (p == agent) continue;
      resolved_[p] = resolve_mixture(tree, p, opponents[p]);
      Eigen::VectorXd w(opponents[p].size());
      for (std::size_t c = 0; c < opponents[p].size(); ++c) w[c] = opponents[p][c].weight;
      reach_[p] = std::move(w);
    }
    forward(0, 1.0);
  }

  double root_value() { return value(0); }

  int choice(int infoset) {
    if (choice_[infoset] >= 0) return choice_[infoset];
    const InfoSet& info = tree_.infosets(agent_)[infoset];
    const int num_actions = static_cast<int>(info.legal_actions.size());
    std::vector<double> q(num_actions, 0.0);
    for (int id : info.nodes) {
      const TreeNode& n = tree_.node(id);
      for (int a = 0; a < num_actions; ++a) q[a] += value(tree_.child(n, a));
    }
    int best = 0;
    for (int a = 1; a < num_actions; ++a) {
      if (q[a] > q[best] + 1e-12 * (1.0 + std::abs(q[best]))) best = a;
    }
    choice_[infoset] = best;
    return best;
  }

 private:
  // Chance and opponent reach at every terminal.
  void forward(int id, double chance_reach) {
    const TreeNode& n = tree_.node(id);
    if (n.player == kTerminalPlayer) {
      double w = chance_reach;
      for (int p = 0; p < tree_.num_players(); ++p) {
        if (p != agent_) w *= reach_[p].sum();
      }
      terminal_weight_[id] = w;
      return;
    }
    if (n.player == kChancePlayer) {
      for (int i = 0; i < n.child_count; ++i) {
        forward(tree_.child(n, i), chance_reach * tree_.child_probability(n, i));
      }
      return;
    }
    if (n.player == agent_) {
      for (int i = 0; i < n.child_count; ++i) forward(tree_.child(n, i), chance_reach);
      return;
    }
    const Eigen::MatrixXd& probs = resolved_[n.player][n.infoset];
    const Eigen::VectorXd saved = reach_[n.player];
    for (int i = 0; i < n.child_count; ++i) {
      reach_[n.player] = saved.cwiseProduct(probs.col(i));
      forward(tree_.child(n, i), chance_reach);
    }
    reach_[n.player] = saved;
  }

  // Reach-weighted sum of the agent's terminal payoffs below `id` when the
  // agent follows its best response.
  double value(int id) {
    if (!std::isnan(value_[id])) return value_[id];
    const TreeNode& n = tree_.node(id);
    double v = 0.0;
    if (n.player == kTerminalPlayer) {
      v = terminal_weight_[id] * tree_.returns(n)[agent_];
    } else if (n.player == agent_) {
      v = value(tree_.child(n, choice(n.infoset)));
    } else {
      for (int i = 0; i < n.child_count; ++i) v += value(tree_.child(n, i));
    }
    value_[id] = v;
    return v;
  }

  const GameTree& tree_;
  const int agent_;
  std::vector<std::vector<Eigen::MatrixXd>> resolved_;
  std::vector<Eigen::VectorXd> reach_;
  std::vector<double> terminal_weight_;
  std::vector<double> value_;
  std::vector<int> choice_;
};

}  // namespace

BestResponse exact_best_response(const Game& game, int agent, const JointPolicy& opponents,
                                 std::string policy_id) {
  const int n = game.num_players();
  if (agent < 0 || agent >= n) throw InvalidArgument("unknown agent " + std::to_string(agent));
  if (static_cast<int>(opponents.size()) != n) {
    throw InvalidArgument("opponent policies cover " + std::to_string(opponents.size()) +
                          " players, game has " + std::to_string(n));
  }
  for (int p = 0; p < n; ++p) {
    if (p != agent && opponents[p].empty()) {
      throw InvalidArgument("opponent mixture missing for " + agent_name(p));
    }
  }
  const GameTree& tree = game.tree();
  BestResponseSolver solver(tree, agent, opponents);
  BestResponse out{TabularPolicy(std::move(policy_id)), solver.root_value()};
  const auto& infosets = tree.infosets(agent);
  for (std::size_t s = 0; s < infosets.size(); ++s) {
    std::vector<double> probs(infosets[s].legal_actions.size(), 0.0);
    probs[solver.choice(static_cast<int>(s))] = 1.0;
    out.policy.set(infosets[s].key, std::move(probs));
  }
  return out;
}

JointPolicy mixtures_from_meta(const MetaStrategy& meta, const std::vector<PolicyPool>& pools,
                               int skip_agent) {
  if (meta.agents.size() != pools.size()) {
    throw InvalidArgument("meta-strategy covers " + std::to_string(meta.agents.size()) +
                          " agents, expected " + std::to_string(pools.size()));
  }
  JointPolicy joint(pools.size());
  for (std::size_t a = 0; a < pools.size(); ++a) {
    if (static_cast<int>(a) == skip_agent) continue;
    const AgentDistribution& d = meta.agents[a];
    for (std::size_t i = 0; i < d.policy_ids.size(); ++i) {
      if (d.probs[i] <= 0.0) continue;
      joint[a].push_back({d.probs[i], pools[a].get(d.policy_ids[i]).get()});
    }
    if (joint[a].empty()) {
      throw InvalidArgument("meta-strategy for " + agent_name(static_cast<int>(a)) +
                            " has no support");
    }
  }
  return joint;
}

BestResponse exact_best_response(const Game& game, int agent, const MetaStrategy& opponent_meta,
                                 const std::vector<PolicyPool>& pools, std::string policy_id) {
  return exact_best_response(game, agent, mixtures_from_meta(opponent_meta, pools, agent),
                             std::move(policy_id));
}

}  // namespace pbmarl
