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

#ifndef PBMARL_EVALUATION_EXPLOITABILITY_HPP_
#define PBMARL_EVALUATION_EXPLOITABILITY_HPP_

#include <vector>

#include "pbmarl/game/game.hpp"
#include "pbmarl/policy/population.hpp"

namespace pbmarl {

struct ExploitabilityReport {
  std::vector<double> best_response_values;
  std::vector<double> on_policy_values;
  std::vector<double> gains;  // best response minus on-policy value, per agent
  double nash_conv = 0.0;
  double exploitability = 0.0;  // nash_conv / number of players
};

// Exact: best responses by tree traversal, on-policy values by enumerating
// the product of the pool mixtures.
ExploitabilityReport exploitability(const Game& game, const MetaStrategy& meta,
                                    const std::vector<PolicyPool>& pools);

// True iff weighted[i] - nash[i] <= epsilon for every agent.
bool psro_converged(const std::vector<double>& weighted_payoffs,
                    const std::vector<double>& nash_payoffs, double epsilon);

}  // namespace pbmarl

#endif  // PBMARL_EVALUATION_EXPLOITABILITY_HPP_
