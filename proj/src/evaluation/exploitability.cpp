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

#include "pbmarl/evaluation/exploitability.hpp"

#include <cmath>

#include "pbmarl/oracle/best_response.hpp"

namespace pbmarl {

ExploitabilityReport exploitability(const Game& game, const MetaStrategy& meta,
                                    const std::vector<PolicyPool>& pools) {
  validate_meta_strategy(meta, pools);
  const int n = game.num_players();
  if (static_cast<int>(meta.num_agents()) != n) {
    throw InvalidArgument("exploitability: meta-strategy covers " +
                          std::to_string(meta.num_agents()) + " agents, game has " +
                          std::to_string(n) + " players");
  }
  ExploitabilityReport report;
  report.on_policy_values = expected_returns(game, mixtures_from_meta(meta, pools));
  for (int p = 0; p < n; ++p) {
    const BestResponse br = exact_best_response(game, p, meta, pools);
    report.best_response_values.push_back(br.value);
    report.gains.push_back(br.value - report.on_policy_values[p]);
    report.nash_conv += report.gains.back();
  }
  report.exploitability = report.nash_conv / n;
  return report;
}

bool psro_converged(const std::vector<double>& weighted_payoffs,
                    const std::vector<double>& nash_payoffs, double epsilon) {
  if (weighted_payoffs.size() != nash_payoffs.size()) {
    throw InvalidArgument("psro_converged: weighted payoffs cover " +
                          std::to_string(weighted_payoffs.size()) + " agents, nash payoffs " +
                          std::to_string(nash_payoffs.size()));
  }
  for (std::size_t i = 0; i < nash_payoffs.size(); ++i) {
    if (!(weighted_payoffs[i] - nash_payoffs[i] <= epsilon)) return false;
  }
  return true;
}

}  // namespace pbmarl
