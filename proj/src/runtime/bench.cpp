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


#include "pbmarl/runtime/bench.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "pbmarl/common.hpp"
#include "pbmarl/game/games.hpp"
#include "pbmarl/runtime/rollout.hpp"

namespace pbmarl {

BenchConfig BenchConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("bench config must be an object");
  BenchConfig c;
  const nlohmann::json* section = &j;
  if (j.contains("bench")) {
    for (const auto& [key, value] : j.items()) {
      if (key != "bench" && key != "seed" && key != "game") {
        throw InvalidArgument("bench config: unknown key \"" + key + "\"");
      }
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("game")) c.game = j["game"];
    section = &j["bench"];
  }
  try {
    for (const auto& [key, value] : section->items()) {
      if (key == "worker_counts") {
        c.worker_counts = value.get<std::vector<int>>();
      } else if (key == "window_s") {
        c.window_s = value.get<double>();
      } else if (key == "envs_per_actor") {
        c.envs_per_actor = value.get<int>();
      } else if (key == "episodes_per_chunk") {
        c.episodes_per_chunk = value.get<int>();
      } else if (key == "seed" && section != &j) {
        throw InvalidArgument("bench config: seed belongs at the top level");
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "game") {
        c.game = value;
      } else {
        throw InvalidArgument("bench config: unknown key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bench config: ") + e.what());
  }
  return c;
}

nlohmann::json BenchConfig::to_json() const {
  return {{"seed", seed},
          {"game", game},
          {"bench",
           {{"worker_counts", worker_counts},
            {"window_s", window_s},
            {"envs_per_actor", envs_per_actor},
            {"episodes_per_chunk", episodes_per_chunk}}}};
}

std::vector<std::string> BenchConfig::validate() const {
  if (!(window_s > 0.0)) throw InvalidArgument("bench: window_s must be positive");
  if (worker_counts.empty()) throw InvalidArgument("bench: worker_counts is empty");
  if (envs_per_actor < 1 || episodes_per_chunk < 1) {
    throw InvalidArgument("bench: envs_per_actor and episodes_per_chunk must be positive");
  }
  std::vector<std::string> warnings;
  const unsigned hw = std::thread::hardware_concurrency();
  for (int n : worker_counts) {
    if (n < 1) throw InvalidArgument("bench: worker counts must be positive");
    if (hw > 0 && static_cast<unsigned>(n) > hw) {
      warnings.push_back(fmt::format("{} actors exceed the {} hardware threads", n, hw));
    }
  }
  create_game(game);
  return warnings;
}

std::vector<BenchRow> run_throughput_bench(const BenchConfig& config) {
  config.validate();
  const std::shared_ptr<const Game> game = create_game(config.game);
  std::vector<PolicyPool> pools;
  for (int i = 0; i < game->num_players(); ++i) {
    PolicyPool pool(i);
    pool.extend(TabularPolicy(pool.next_policy_id()));
    pools.push_back(std::move(pool));
  }
  const PoolSnapshot snap = std::make_shared<const std::vector<PolicyPool>>(std::move(pools));
  const MetaStrategy meta = uniform_meta_strategy(*snap);
  std::vector<BenchRow> rows;
  for (int n : config.worker_counts) {
    std::atomic<bool> go{false};
    std::atomic<std::int64_t> steps{0};
    std::atomic<std::int64_t> episodes{0};
    const auto window = std::chrono::duration<double>(config.window_s);
    std::chrono::steady_clock::time_point deadline;
    std::vector<std::thread> threads;
    for (int a = 0; a < n; ++a) {
      threads.emplace_back([&, a] {
        RolloutWorker worker(game, config.envs_per_actor, nullptr, nullptr);
        RolloutRequest request;
        request.meta = meta;
        request.num_episodes = config.episodes_per_chunk;
        request.stop = [&deadline] { return std::chrono::steady_clock::now() >= deadline; };
        while (!go.load()) std::this_thread::yield();
        for (int chunk = 0; !request.stop(); ++chunk) {
          request.seed = derive_seed(config.seed, fmt::format("bench/{}/{}/{}", n, a, chunk));
          const EvaluationReport r = worker.rollout(request, snap);
          steps += r.steps;
          episodes += r.episodes;
        }
      });
    }
    const auto start = std::chrono::steady_clock::now();
    deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(window);
    go = true;
    for (auto& t : threads) t.join();
    BenchRow row;
    row.num_actors = n;
    row.steps = steps.load();
    row.episodes = episodes.load();
    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    row.steps_per_second = row.seconds > 0.0 ? row.steps / row.seconds : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "num_actors\tsteps\tepisodes\tseconds\tsteps_per_second\n";
  for (const BenchRow& r : rows) {
    out << fmt::format("{}\t{}\t{}\t{:.3f}\t{:.1f}\n", r.num_actors, r.steps, r.episodes,
                       r.seconds, r.steps_per_second);
  }
  return out.str();
}

}  // namespace pbmarl
