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

#ifndef PBMARL_GAME_EXPECTATION_HPP_
#define PBMARL_GAME_EXPECTATION_HPP_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pbmarl/game/game.hpp"
#include "pbmarl/game/game_tree.hpp"

namespace pbmarl {

// Anything that maps an information state to a distribution over its legal
// actions.
class BehaviorPolicy {
 public:
  virtual ~BehaviorPolicy() = default;
  // Returns probabilities aligned with `legal_actions`.
  virtual std::vector<double> action_probabilities(
      const std::string& info_state_key, std::span<const Action> legal_actions) const = 0;
};

// A player's policy drawn once per episode from weighted components.
struct MixtureComponent {
  double weight;
  const BehaviorPolicy* policy;
};
using PolicyMixture = std::vector<MixtureComponent>;

// One mixture per player.
using JointPolicy = std::vector<PolicyMixture>;

JointPolicy pure_joint(std::span<const BehaviorPolicy* const> policies);

// Throws InvalidArgument unless `probs` is a distribution over `legal_count`
// actions (nonnegative, sums to 1 within 1e-9).
void check_distribution(std::span<const double> probs, std::size_t legal_count,
                        const std::string& context);

// Per information set of `player`, a (components x legal actions) matrix of
// action probabilities for each mixture component.
std::vector<Eigen::MatrixXd> resolve_mixture(const GameTree& tree, int player,
                                             const PolicyMixture& mixture);

// Exact expected terminal payoffs under `joint`, by enumerating the tree with
// reach-probability weighting. Each player's mixture is sampled once per
// episode, independently of the other players.
std::vector<double> expected_returns(const Game& game, const JointPolicy& joint);

// Called once per decision taken during a sampled episode.
struct DecisionRecord {
  int player;
  const std::string& info_state_key;
  int action_index;  // index into the legal-action list
  int num_legal;
};

struct EpisodeOutcome {
  std::vector<double> returns;
  int steps = 0;  // decisions plus chance events
};

// Samples one episode. `policies` holds one behavior per player.
EpisodeOutcome play_episode(const Game& game, std::span<const BehaviorPolicy* const> policies,
                            Rng& rng,
                            const std::function<void(const DecisionRecord&)>& on_decision = {});

// Samples an index from a discrete distribution.
int sample_index(std::span<const double> probs, Rng& rng);

}  // namespace pbmarl

#endif  // PBMARL_GAME_EXPECTATION_HPP_
