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

#ifndef PBMARL_ORACLE_BEST_RESPONSE_HPP_
#define PBMARL_ORACLE_BEST_RESPONSE_HPP_

#include <string>
#include <vector>

#include "pbmarl/game/expectation.hpp"
#include "pbmarl/game/game.hpp"
#include "pbmarl/policy/population.hpp"
#include "pbmarl/policy/tabular_policy.hpp"

namespace pbmarl {

struct BestResponse {
  TabularPolicy policy;  // deterministic, one entry per information set
  double value = 0.0;    // expected return of `policy` against the opponents
};

// Exact best response of `agent` by backward induction over the game tree.
// `opponents` holds one mixture per player; the entry for `agent` is ignored.
// Each opponent mixture is sampled once per episode, so opponent reach
// probabilities are mixture-weighted. Ties go to the lowest action index.
BestResponse exact_best_response(const Game& game, int agent, const JointPolicy& opponents,
                                 std::string policy_id = "best_response");

// Convenience form over meta-strategies and pools.
BestResponse exact_best_response(const Game& game, int agent, const MetaStrategy& opponent_meta,
                                 const std::vector<PolicyPool>& pools,
                                 std::string policy_id = "best_response");

// Builds per-player mixtures from a meta-strategy. Zero-weight entries are
// dropped. `skip_agent` (if >= 0) gets an empty mixture.
JointPolicy mixtures_from_meta(const MetaStrategy& meta, const std::vector<PolicyPool>& pools,
                               int skip_agent = -1);

}  // namespace pbmarl

#endif  // PBMARL_ORACLE_BEST_RESPONSE_HPP_
