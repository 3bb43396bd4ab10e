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

#include "pbmarl/runtime/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "pbmarl/game/games.hpp"

namespace pbmarl {
namespace {

using nlohmann::json;

// Reads typed fields from one config section and rejects unknown keys.
class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw InvalidArgument("config section " + name_ + " must be an object");
  }
  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw InvalidArgument("unknown config key " + path(key));
    }
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw InvalidArgument("config key " + path(key) + " has the wrong type");
    }
  }
  void get_int(const char* key, int& out) {
    std::int64_t v = out;
    get_int64(key, v);
    if (v < INT32_MIN || v > INT32_MAX) throw InvalidArgument("config key " + path(key) + " is out of range");
    out = static_cast<int>(v);
  }
  void get_int64(const char* key, std::int64_t& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    if (!j_.at(key).is_number_integer()) {
      throw InvalidArgument("config key " + path(key) + " must be an integer");
    }
    out = j_.at(key).get<std::int64_t>();
  }
  void get_double(const char* key, double& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    if (!j_.at(key).is_number()) throw InvalidArgument("config key " + path(key) + " must be a number");
    out = j_.at(key).get<double>();
  }
  const json* sub(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }
  std::string path(const std::string& key) const { return name_ + "." + key; }

 private:
  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

void read_q_learning(const json& j, QLearningConfig& q) {
  Section s(j, "oracle.q_learning");
  s.get_double("learning_rate", q.learning_rate);
  s.get_double("discount", q.discount);
  s.get_double("epsilon_start", q.epsilon_start);
  s.get_double("epsilon_end", q.epsilon_end);
  s.get_int("batch_size", q.batch_size);
  s.get_int("push_interval", q.push_interval);
  s.get_int("episodes", q.episodes);
  s.get_int("episodes_per_epoch", q.episodes_per_epoch);
  s.get_int("updates_per_epoch", q.updates_per_epoch);
  s.get_int("starvation_patience", q.starvation_patience);
  s.get("select_best_checkpoint", q.select_best_checkpoint);
}

const char* mode_name(SimulationMode m) {
  return m == SimulationMode::kExact ? "exact" : "monte_carlo";
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  {
    Section root(j, "config");
    if (const json* seed = root.sub("seed")) {
      if (!seed->is_number_integer() || (seed->is_number_integer() && !seed->is_number_unsigned() &&
                                         seed->get<std::int64_t>() < 0)) {
        throw InvalidArgument("config key config.seed must be a non-negative 64-bit integer");
      }
      c.seed = seed->get<std::uint64_t>();
    }
    if (const json* game = root.sub("game")) {
      if (!game->is_object() || !game->contains("name")) {
        throw InvalidArgument("config section game needs a name");
      }
      c.game = *game;
    }
    if (const json* a = root.sub("algorithm")) {
      Section s(*a, "algorithm");
      s.get("name", c.algorithm.name);
      s.get_int("max_iterations", c.algorithm.max_iterations);
      s.get("check_convergence", c.algorithm.check_convergence);
      s.get_double("convergence_epsilon", c.algorithm.convergence_epsilon);
      s.get("bootstrap", c.algorithm.bootstrap);
      s.get("new_policy_init", c.algorithm.new_policy_init);
      s.get("pool_mapping", c.algorithm.pool_mapping);
    }
    if (const json* m = root.sub("meta_solver")) {
      Section s(*m, "meta_solver");
      s.get("name", c.meta_solver.name);
      s.get_int("iterations", c.meta_solver.fictitious_play_iterations);
      if (const json* ar = s.sub("alpha_rank")) {
        Section t(*ar, "meta_solver.alpha_rank");
        t.get_int("population_size", c.meta_solver.alpha_rank.population_size);
        t.get_double("perturbation", c.meta_solver.alpha_rank.perturbation);
        t.get_double("tolerance", c.meta_solver.alpha_rank.tolerance);
      }
    }
    if (const json* o = root.sub("oracle")) {
      Section s(*o, "oracle");
      s.get("name", c.oracle.name);
      if (const json* q = s.sub("q_learning")) read_q_learning(*q, c.oracle.q_learning);
    }
    if (const json* sim = root.sub("simulation")) {
      Section s(*sim, "simulation");
      std::string mode = mode_name(c.simulation.mode);
      s.get("mode", mode);
      if (mode == "exact") {
        c.simulation.mode = SimulationMode::kExact;
      } else if (mode == "monte_carlo") {
        c.simulation.mode = SimulationMode::kMonteCarlo;
      } else {
        throw InvalidArgument("simulation.mode must be exact or monte_carlo, got " + mode);
      }
      s.get_int("episodes", c.simulation.episodes);
    }
    if (const json* r = root.sub("runtime")) {
      Section s(*r, "runtime");
      s.get("executor", c.runtime.executor);
      s.get_int("num_actors", c.runtime.num_actors);
      s.get_int("envs_per_actor", c.runtime.envs_per_actor);
      s.get_int("num_evaluators", c.runtime.num_evaluators);
      s.get("training", c.runtime.training);
      s.get_int64("buffer_capacity", c.runtime.buffer_capacity);
      s.get_int64("min_buffer_size", c.runtime.min_buffer_size);
      s.get_int("max_retries", c.runtime.max_retries);
      s.get("task_log", c.runtime.task_log);
    }
    if (const json* st = root.sub("stoppers")) {
      Section s(*st, "stoppers");
      if (const json* t = s.sub("target_exploitability")) {
        if (!t->is_null()) {
          if (!t->is_number()) throw InvalidArgument("stoppers.target_exploitability must be a number");
          c.stoppers.target_exploitability = t->get<double>();
        }
      }
      s.get("target_metric", c.stoppers.target_metric);
      s.get_int("plateau_window", c.stoppers.plateau_window);
      s.get_double("plateau_delta", c.stoppers.plateau_delta);
      s.get_int64("train_budget", c.stoppers.train_budget);
      s.get_int64("max_episodes", c.stoppers.max_episodes);
    }
    if (const json* e = root.sub("evaluation")) {
      Section s(*e, "evaluation");
      s.get("exploitability", c.evaluate_exploitability);
    }
  }
  c.validate();
  return c;
}

json ExperimentConfig::to_json() const {
  const QLearningConfig& q = oracle.q_learning;
  json j;
  j["seed"] = seed;
  j["game"] = game;
  j["algorithm"] = {{"name", algorithm.name},
                    {"max_iterations", algorithm.max_iterations},
                    {"check_convergence", algorithm.check_convergence},
                    {"convergence_epsilon", algorithm.convergence_epsilon},
                    {"bootstrap", algorithm.bootstrap},
                    {"new_policy_init", algorithm.new_policy_init},
                    {"pool_mapping", algorithm.pool_mapping}};
  j["meta_solver"] = {{"name", meta_solver.name},
                      {"iterations", meta_solver.fictitious_play_iterations},
                      {"alpha_rank",
                       {{"population_size", meta_solver.alpha_rank.population_size},
                        {"perturbation", meta_solver.alpha_rank.perturbation},
                        {"tolerance", meta_solver.alpha_rank.tolerance}}}};
  j["oracle"] = {{"name", oracle.name},
                 {"q_learning",
                  {{"learning_rate", q.learning_rate},
                   {"discount", q.discount},
                   {"epsilon_start", q.epsilon_start},
                   {"epsilon_end", q.epsilon_end},
                   {"batch_size", q.batch_size},
                   {"push_interval", q.push_interval},
                   {"episodes", q.episodes},
                   {"episodes_per_epoch", q.episodes_per_epoch},
                   {"updates_per_epoch", q.updates_per_epoch},
                   {"starvation_patience", q.starvation_patience},
                   {"select_best_checkpoint", q.select_best_checkpoint}}}};
  j["simulation"] = {{"mode", mode_name(simulation.mode)}, {"episodes", simulation.episodes}};
  j["runtime"] = {{"executor", runtime.executor},
                  {"num_actors", runtime.num_actors},
                  {"envs_per_actor", runtime.envs_per_actor},
                  {"num_evaluators", runtime.num_evaluators},
                  {"training", runtime.training},
                  {"buffer_capacity", runtime.buffer_capacity},
                  {"min_buffer_size", runtime.min_buffer_size},
                  {"max_retries", runtime.max_retries},
                  {"task_log", runtime.task_log}};
  j["stoppers"] = {{"target_exploitability", stoppers.target_exploitability
                                                 ? json(*stoppers.target_exploitability)
                                                 : json(nullptr)},
                   {"target_metric", stoppers.target_metric},
                   {"plateau_window", stoppers.plateau_window},
                   {"plateau_delta", stoppers.plateau_delta},
                   {"train_budget", stoppers.train_budget},
                   {"max_episodes", stoppers.max_episodes}};
  j["evaluation"] = {{"exploitability", evaluate_exploitability}};
  return j;
}

void ExperimentConfig::validate() const {
  auto one_of = [](const std::string& key, const std::string& value,
                   std::initializer_list<const char*> names) {
    for (const char* n : names) {
      if (value == n) return;
    }
    std::string list;
    for (const char* n : names) list += std::string(list.empty() ? "" : ", ") + n;
    throw NotFound("unknown " + key + " \"" + value + "\" (expected one of: " + list + ")");
  };
  one_of("algorithm", algorithm.name, {"psro", "fsp", "sp"});
  one_of("meta-solver", meta_solver.name,
         {"uniform", "fictitious_play", "alpha_rank", "zero_sum_lp"});
  one_of("oracle", oracle.name, {"exact", "q_learning"});
  one_of("bootstrap", algorithm.bootstrap, {"uniform", "first_action"});
  one_of("new_policy_init", algorithm.new_policy_init, {"uniform", "copy_last"});
  one_of("pool_mapping", algorithm.pool_mapping, {"per_agent", "shared"});
  one_of("executor", runtime.executor, {"threads", "inline"});
  one_of("training mode", runtime.training, {"sync", "async"});
  one_of("target_metric", stoppers.target_metric, {"exploitability", "nash_conv"});
  if (algorithm.pool_mapping == "shared") {
    throw InvalidArgument("pool_mapping \"shared\" is not supported by the coordinator");
  }
  if (algorithm.max_iterations < 0) throw InvalidArgument("algorithm.max_iterations must be >= 0");
  if (meta_solver.fictitious_play_iterations < 1) {
    throw InvalidArgument("meta_solver.iterations must be >= 1");
  }
  if (meta_solver.alpha_rank.population_size < 1 || !(meta_solver.alpha_rank.perturbation > 0.0) ||
      !(meta_solver.alpha_rank.perturbation < 1.0)) {
    throw InvalidArgument("meta_solver.alpha_rank needs population_size >= 1 and perturbation in (0, 1)");
  }
  if (runtime.num_actors < 1) throw InvalidArgument("runtime.num_actors must be >= 1");
  if (runtime.envs_per_actor < 1) throw InvalidArgument("runtime.envs_per_actor must be >= 1");
  if (runtime.num_evaluators < 1) throw InvalidArgument("runtime.num_evaluators must be >= 1");
  if (runtime.buffer_capacity < 1) throw InvalidArgument("runtime.buffer_capacity must be >= 1");
  if (runtime.min_buffer_size < 1 || runtime.min_buffer_size > runtime.buffer_capacity) {
    throw InvalidArgument("runtime.min_buffer_size must be in [1, buffer_capacity]");
  }
  if (runtime.max_retries < 0) throw InvalidArgument("runtime.max_retries must be >= 0");
  if (runtime.training == "async" && runtime.executor != "threads") {
    throw InvalidArgument("asynchronous training needs the threads executor");
  }
  if (simulation.mode == SimulationMode::kMonteCarlo && simulation.episodes < 1) {
    throw InvalidArgument("simulation.episodes must be >= 1");
  }
  if (stoppers.plateau_window < 0 || stoppers.train_budget < 0 || stoppers.max_episodes < 0) {
    throw InvalidArgument("stoppers must be non-negative");
  }
  const QLearningConfig& q = oracle.q_learning;
  if (q.episodes < 1 || q.batch_size < 1 || q.episodes_per_epoch < 1 || q.updates_per_epoch < 1 ||
      q.push_interval < 1 || q.starvation_patience < 0) {
    throw InvalidArgument("oracle.q_learning budgets, sizes and intervals must be positive");
  }
  if (!(q.learning_rate > 0.0 && q.learning_rate <= 1.0) ||
      !(q.discount >= 0.0 && q.discount <= 1.0) || q.epsilon_start < 0.0 ||
      q.epsilon_start > 1.0 || q.epsilon_end < 0.0 || q.epsilon_end > 1.0) {
    throw InvalidArgument("oracle.q_learning rates must lie in [0, 1]");
  }
  auto instance = create_game(game);
  if (instance->num_players() < 2) throw InvalidArgument("game needs at least two players");
}

StopperConfig ExperimentConfig::inner_stoppers() const {
  StopperConfig s;
  s.plateau_window = stoppers.plateau_window;
  s.plateau_delta = stoppers.plateau_delta;
  s.train_budget = stoppers.train_budget > 0 ? stoppers.train_budget
                                             : oracle.q_learning.total_updates();
  s.max_episodes = stoppers.max_episodes > 0 ? stoppers.max_episodes : oracle.q_learning.episodes;
  return s;
}

json apply_overrides(json config, const std::vector<std::string>& overrides) {
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidArgument("override \"" + kv + "\" is not of the form key=value");
    }
    const std::string key = kv.substr(0, eq);
    const std::string text = kv.substr(eq + 1);
    json value;
    try {
      value = json::parse(text);
    } catch (const json::parse_error&) {
      value = text;
    }
    json* node = &config;
    std::stringstream path(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(path, part, '.')) {
      if (part.empty()) throw InvalidArgument("override key \"" + key + "\" has an empty segment");
      parts.push_back(part);
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      if (!node->is_object()) throw InvalidArgument("override key \"" + key + "\" crosses a value");
      node = &(*node)[parts[i]];
      if (node->is_null()) *node = json::object();
    }
    if (!node->is_object()) throw InvalidArgument("override key \"" + key + "\" crosses a value");
    (*node)[parts.back()] = std::move(value);
  }
  return config;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config file " + path + " is not valid JSON: " + e.what());
  }
}

}  // namespace pbmarl
