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

#include "pbmarl/runtime/sample_batch.hpp"

#include <cmath>

#include "pbmarl/common.hpp"

namespace pbmarl {

void SampleBatch::push_back(const Transition& t) {
  info_state.push_back(t.info_state);
  action.push_back(t.action);
  reward.push_back(t.reward);
  next_info_state.push_back(t.next_info_state);
  done.push_back(t.done ? 1 : 0);
  agent.push_back(t.agent);
  policy_version.push_back(t.policy_version);
  num_actions.push_back(t.num_actions);
  next_num_actions.push_back(t.next_num_actions);
}

Transition SampleBatch::row(std::size_t i) const {
  return Transition{info_state.at(i),     action.at(i), reward.at(i),
                    next_info_state.at(i), done.at(i) != 0, agent.at(i),
                    policy_version.at(i),  num_actions.at(i), next_num_actions.at(i)};
}

void SampleBatch::append(const SampleBatch& other) {
  for (std::size_t i = 0; i < other.rows(); ++i) push_back(other.row(i));
}

void SampleBatch::validate() const {
  const std::size_t n = info_state.size();
  if (action.size() != n || reward.size() != n || next_info_state.size() != n ||
      done.size() != n || agent.size() != n || policy_version.size() != n ||
      num_actions.size() != n || next_num_actions.size() != n) {
    throw InvalidArgument("sample batch columns have different row counts");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(reward[i])) throw InvalidArgument("sample batch has a non-finite reward");
    if (done[i] > 1) throw InvalidArgument("sample batch done flag is not boolean");
    if (action[i] < 0 || action[i] >= num_actions[i]) {
      throw InvalidArgument("sample batch action index out of range at row " + std::to_string(i));
    }
  }
}

}  // namespace pbmarl
