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

#ifndef PBMARL_RUNTIME_SAMPLE_BATCH_HPP_
#define PBMARL_RUNTIME_SAMPLE_BATCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace pbmarl {

// One decision of one agent and what followed it, up to that agent's next
// decision or the end of the episode.
struct Transition {
  std::string info_state;
  int action = 0;  // index into the legal actions of info_state
  double reward = 0.0;
  std::string next_info_state;  // empty when done
  bool done = false;
  int agent = 0;
  std::uint64_t policy_version = 0;
  int num_actions = 0;
  int next_num_actions = 0;

  bool operator==(const Transition&) const = default;
};

// Column-major batch of transitions. All columns share one row count.
struct SampleBatch {
  std::vector<std::string> info_state;
  std::vector<int> action;
  std::vector<double> reward;
  std::vector<std::string> next_info_state;
  std::vector<std::uint8_t> done;
  std::vector<int> agent;
  std::vector<std::uint64_t> policy_version;
  std::vector<int> num_actions;
  std::vector<int> next_num_actions;

  std::size_t rows() const { return info_state.size(); }
  bool empty() const { return rows() == 0; }

  void push_back(const Transition& t);
  Transition row(std::size_t i) const;
  void append(const SampleBatch& other);

  // Throws InvalidArgument on column-length mismatch, non-finite rewards or
  // an action index outside the row's action count.
  void validate() const;
};

}  // namespace pbmarl

#endif  // PBMARL_RUNTIME_SAMPLE_BATCH_HPP_
