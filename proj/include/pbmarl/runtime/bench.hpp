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


#ifndef PBMARL_RUNTIME_BENCH_HPP_
#define PBMARL_RUNTIME_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pbmarl {

struct BenchConfig {
  std::uint64_t seed = 0;
  nlohmann::json game = {{"name", "synthetic"}, {"episode_length", 10}, {"step_cost_us", 10}};
  std::vector<int> worker_counts = {1, 2, 4};
  double window_s = 2.0;
  int envs_per_actor = 8;
  int episodes_per_chunk = 16;

  // Accepts either a bare bench section or an experiment config carrying a
  // "bench" section next to "seed" and "game".
  static BenchConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  // Throws InvalidArgument; returns warnings (e.g. counts above the number
  // of hardware threads).
  std::vector<std::string> validate() const;
};

struct BenchRow {
  int num_actors = 0;
  std::int64_t steps = 0;
  std::int64_t episodes = 0;
  double seconds = 0.0;
  double steps_per_second = 0.0;
};

// Pure rollout throughput: for each worker count, that many actor threads
// play uniform-random episodes for a fixed wall-time window.
std::vector<BenchRow> run_throughput_bench(const BenchConfig& config);

std::string format_bench_table(const std::vector<BenchRow>& rows);

}  // namespace pbmarl

#endif  // PBMARL_RUNTIME_BENCH_HPP_
