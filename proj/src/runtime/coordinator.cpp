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

#include "pbmarl/runtime/coordinator.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include <spdlog/spdlog.h>

#include "pbmarl/game/games.hpp"

namespace pbmarl {
namespace {

class InlineExecutor : public Executor {
 public:
  InlineExecutor(Dispatcher& dispatcher, std::vector<Worker*> workers)
      : dispatcher_(dispatcher), workers_(std::move(workers)), pending_(workers_.size()) {}

  void start() override {}

  CompletionReport next() override {
    while (true) {
      if (auto c = dispatcher_.poll_completion()) return std::move(*c);
      bool progress = false;
      for (std::size_t i = 0; i < workers_.size(); ++i) {
        const bool had_report = pending_[i].has_value();
        TaskDescriptor task =
            dispatcher_.request_task(workers_[i]->id(), std::exchange(pending_[i], std::nullopt));
        if (task.kind == TaskKind::kWait || task.kind == TaskKind::kTerminate) {
          progress = progress || had_report;
          continue;
        }
        pending_[i] = workers_[i]->run(task);
        progress = true;
      }
      if (!progress) throw RuntimeFailure("no runnable task while waiting for a completion");
    }
  }

  void stop() override {
    for (std::size_t i = 0; i < workers_.size(); ++i) {
      if (pending_[i]) {
        dispatcher_.request_task(workers_[i]->id(), std::exchange(pending_[i], std::nullopt));
      }
    }
    dispatcher_.shutdown();
  }

 private:
  Dispatcher& dispatcher_;
  std::vector<Worker*> workers_;
  std::vector<std::optional<CompletionReport>> pending_;
};

class ThreadedExecutor : public Executor {
 public:
  ThreadedExecutor(Dispatcher& dispatcher, std::vector<Worker*> workers)
      : dispatcher_(dispatcher), workers_(std::move(workers)) {}
  ~ThreadedExecutor() override { stop(); }

  void start() override {
    for (Worker* w : workers_) {
      threads_.emplace_back([this, w] {
        std::optional<CompletionReport> last;
        try {
          while (true) {
            TaskDescriptor task = dispatcher_.request_task(w->id(), std::move(last), true);
            last.reset();
            if (task.kind == TaskKind::kTerminate) return;
            last = w->run(task);
          }
        } catch (const std::exception& e) {
          spdlog::error("worker {} stopped: {}", w->id(), e.what());
        }
      });
    }
  }

  CompletionReport next() override { return dispatcher_.wait_completion(); }

  void stop() override {
    dispatcher_.shutdown();
    for (std::thread& t : threads_) {
      if (t.joinable()) t.join();
    }
    threads_.clear();
  }

 private:
  Dispatcher& dispatcher_;
  std::vector<Worker*> workers_;
  std::vector<std::thread> threads_;
};

MetaStrategy newest_point_mass(const std::vector<PolicyPool>& pools) {
  MetaStrategy meta;
  for (const PolicyPool& pool : pools) {
    AgentDistribution d{pool.ids(), std::vector<double>(pool.size(), 0.0)};
    d.probs.back() = 1.0;
    meta.agents.push_back(std::move(d));
  }
  return meta;
}

nlohmann::json meta_to_json(const MetaStrategy& meta) {
  nlohmann::json j = nlohmann::json::array();
  for (const AgentDistribution& d : meta.agents) j.push_back(d.probs);
  return j;
}

std::vector<std::pair<int, int>> split_evenly(int total, int parts) {
  std::vector<std::pair<int, int>> chunks;  // (chunk index, size)
  for (int c = 0; c < parts; ++c) {
    const int size = total / parts + (c < total % parts ? 1 : 0);
    if (size > 0) chunks.push_back({c, size});
  }
  return chunks;
}

}  // namespace

int RunSummary::exit_code() const {
  if (stop_reason == "converged" || stop_reason == "target_reached") return 0;
  if (stop_reason == "max_iterations") return 2;
  return 4;
}

RunSummaryRecord RunSummary::record() const {
  RunSummaryRecord r;
  r.stop_reason = stop_reason;
  r.iterations = iterations;
  r.final_exploitability = final_exploitability;
  r.final_nash_conv = final_nash_conv;
  r.total_env_steps = total_env_steps;
  r.wall_time_s = wall_time_s;
  r.extra["pool_size"] = pool_sizes;
  r.extra["final_meta_strategy"] = meta_to_json(final_meta);
  r.extra["policy_ids"] = nlohmann::json::array();
  for (const AgentDistribution& d : final_meta.agents) r.extra["policy_ids"].push_back(d.policy_ids);
  r.extra["tasks"] = {{"submitted", tasks.submitted}, {"dispatched", tasks.dispatched},
                      {"completed", tasks.completed}, {"failed", tasks.failed},
                      {"in_flight", tasks.in_flight}};
  r.extra["parameter_audit_ok"] = parameter_audit_ok;
  if (!task_audit.empty()) r.extra["task_audit"] = task_audit;
  if (!error.empty()) r.extra["error"] = error;
  return r;
}

Coordinator::Coordinator(ExperimentConfig config, CoordinatorHooks hooks)
    : config_(std::move(config)), hooks_(std::move(hooks)) {
  config_.validate();
  game_ = create_game(config_.game);
  num_agents_ = game_->num_players();
  params_ = std::make_unique<ParameterServer>();
  dataset_ = std::make_unique<DatasetServer>(config_.runtime.buffer_capacity,
                                             config_.runtime.min_buffer_size);
  evaluator_ = std::make_unique<Evaluator>(num_agents_);
  dispatcher_ = std::make_unique<Dispatcher>(config_.runtime.task_log);
  for (int a = 0; a < config_.runtime.num_actors; ++a) {
    workers_.push_back(std::make_unique<ActorWorker>("actor_" + std::to_string(a), game_,
                                                     config_.runtime.envs_per_actor,
                                                     params_.get(), dataset_.get(),
                                                     evaluator_.get()));
  }
  for (int i = 0; i < num_agents_; ++i) {
    workers_.push_back(std::make_unique<LearnerWorker>("learner_" + std::to_string(i), i, game_,
                                                       params_.get(), dataset_.get(),
                                                       config_.oracle.q_learning));
  }
  for (int e = 0; e < config_.runtime.num_evaluators; ++e) {
    workers_.push_back(std::make_unique<EvaluatorWorker>("evaluator_" + std::to_string(e), game_));
  }
  std::vector<Worker*> raw;
  for (auto& w : workers_) {
    if (hooks_.inject_failure) w->set_fault_injector(hooks_.inject_failure);
    dispatcher_->register_worker(w->id(), w->role(), w->agent());
    raw.push_back(w.get());
  }
  timing_ = config_.runtime.executor == "threads";
  if (timing_) {
    executor_ = std::make_unique<ThreadedExecutor>(*dispatcher_, std::move(raw));
  } else {
    executor_ = std::make_unique<InlineExecutor>(*dispatcher_, std::move(raw));
  }
}

Coordinator::~Coordinator() {
  if (executor_) executor_->stop();
}

double Coordinator::elapsed() const {
  if (!timing_) return 0.0;
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

PoolSnapshot Coordinator::snapshot() const {
  return std::make_shared<const std::vector<PolicyPool>>(pools_);
}

TaskId Coordinator::submit(TaskDescriptor task) { return dispatcher_->submit(std::move(task)); }

std::vector<TaskResult> Coordinator::run_tasks(std::vector<TaskDescriptor> tasks) {
  std::vector<TaskResult> results(tasks.size());
  std::map<TaskId, std::size_t> slot;
  for (std::size_t i = 0; i < tasks.size(); ++i) slot[submit(tasks[i])] = i;
  std::size_t remaining = tasks.size();
  while (remaining > 0) {
    CompletionReport report = executor_->next();
    auto it = slot.find(report.task_id);
    if (it == slot.end()) {
      throw RuntimeFailure("completion for task " + std::to_string(report.task_id) +
                           " outside the current batch");
    }
    const std::size_t index = it->second;
    slot.erase(it);
    if (report.ok) {
      results[index] = std::move(report.result);
      --remaining;
      continue;
    }
    TaskDescriptor& task = tasks[index];
    spdlog::warn("{} task {} failed on {} (attempt {}): {}", task_kind_name(task.kind),
                 report.task_id, report.worker_id, task.attempt + 1, report.error);
    if (task.attempt >= config_.runtime.max_retries) {
      throw RuntimeFailure(std::string(task_kind_name(task.kind)) + " task failed " +
                           std::to_string(task.attempt + 1) + " times: " + report.error);
    }
    ++task.attempt;
    slot[submit(task)] = index;
  }
  return results;
}

void Coordinator::bootstrap() {
  pools_.clear();
  for (int i = 0; i < num_agents_; ++i) {
    PolicyPool pool(i);
    const PolicyId id = pool.next_policy_id();
    TabularPolicy policy = config_.algorithm.bootstrap == "first_action"
                               ? first_action_policy(*game_, i, id)
                               : TabularPolicy(id);
    policy.set_version(1);
    params_->push(id, serialize_parameters(policy), 1);
    pool.extend(std::move(policy));
    pool.freeze(id);
    params_->freeze(id);
    frozen_digests_[id] = parameter_digest(*pool.get(id));
    pools_.push_back(std::move(pool));
  }
  simulate_new_entries(0);
}

MetaStrategy Coordinator::solve_restricted() const {
  if (config_.algorithm.name == "fsp") return uniform_meta_strategy(pools_);
  if (config_.algorithm.name == "sp") return newest_point_mass(pools_);
  return solve_meta(evaluator_->snapshot(), config_.meta_solver);
}

MetaStrategy Coordinator::opponent_meta_for_training(const MetaStrategy& current) const {
  if (config_.algorithm.name == "fsp") return uniform_meta_strategy(pools_);
  if (config_.algorithm.name == "sp") return newest_point_mass(pools_);
  return current;
}

void Coordinator::simulate_new_entries(int iteration) {
  std::vector<TaskDescriptor> tasks;
  const PoolSnapshot snap = snapshot();
  for (int i = 0; i < num_agents_; ++i) {
    for (SimulationTask& sim : evaluator_->expand_axes(i, pools_[i], config_.simulation.episodes,
                                                       config_.simulation.mode)) {
      std::string stream = "simulation/" + std::to_string(iteration);
      for (const PolicyId& id : sim.combination.policy_ids) stream += "/" + id;
      TaskDescriptor t;
      t.kind = TaskKind::kSimulation;
      t.payload = SimulationPayload{std::move(sim), derive_seed(config_.seed, stream)};
      t.pools = snap;
      tasks.push_back(std::move(t));
    }
  }
  for (const TaskResult& r : run_tasks(std::move(tasks))) {
    env_steps_ += std::get<EvaluationReport>(r).steps;
  }
}

std::vector<TabularPolicy> Coordinator::train_exact(int iteration,
                                                    const std::vector<PolicyId>& ids,
                                                    const MetaStrategy& opponents,
                                                    const PoolSnapshot& snap) {
  std::vector<TaskDescriptor> tasks;
  for (int i = 0; i < num_agents_; ++i) {
    TrainingPayload p;
    p.iteration = iteration;
    p.agent = i;
    p.policy_id = ids[i];
    p.opponent_meta = opponents;
    p.exact = true;
    TaskDescriptor t;
    t.kind = TaskKind::kTraining;
    t.payload = std::move(p);
    t.pools = snap;
    tasks.push_back(std::move(t));
  }
  std::vector<TabularPolicy> out;
  int i = 0;
  for (TaskResult& r : run_tasks(std::move(tasks))) {
    TrainingResult& tr = std::get<TrainingResult>(r);
    last_oracle_stats_[i++] = tr.statistics;
    out.push_back(std::move(*tr.policy));
  }
  return out;
}

std::vector<TabularPolicy> Coordinator::train_q_sync(int iteration,
                                                     const std::vector<PolicyId>& ids,
                                                     const MetaStrategy& opponents,
                                                     const PoolSnapshot& snap) {
  const QLearningConfig& rl = config_.oracle.q_learning;
  const StopperConfig stoppers = config_.inner_stoppers();
  for (int i = 0; i < num_agents_; ++i) dataset_->clear(i);
  std::vector<std::vector<EvaluationReport>> reports(num_agents_);
  std::vector<std::int64_t> updates(num_agents_, 0);
  std::vector<bool> active(num_agents_, true);
  auto training_task = [&](int i, int num_updates, bool finalize) {
    TrainingPayload p;
    p.iteration = iteration;
    p.agent = i;
    p.policy_id = ids[i];
    p.opponent_meta = opponents;
    p.exact = false;
    p.updates = num_updates;
    p.finalize = finalize;
    p.seed = derive_seed(config_.seed, "learner/" + std::to_string(iteration) + "/" +
                                           std::to_string(i));
    TaskDescriptor t;
    t.kind = TaskKind::kTraining;
    t.payload = std::move(p);
    t.pools = snap;
    return t;
  };
  for (int epoch = 0; std::count(active.begin(), active.end(), true) > 0; ++epoch) {
    std::vector<TaskDescriptor> rollouts;
    std::vector<int> owner;
    for (int i = 0; i < num_agents_; ++i) {
      if (!active[i]) continue;
      for (auto [chunk, size] : split_evenly(rl.episodes_per_epoch, config_.runtime.num_actors)) {
        RolloutPayload p{iteration, i, ids[i], opponents, size,
                         derive_seed(config_.seed, "rollout/" + std::to_string(iteration) + "/" +
                                                       std::to_string(i) + "/" +
                                                       std::to_string(epoch) + "/" +
                                                       std::to_string(chunk))};
        TaskDescriptor t;
        t.kind = TaskKind::kRollout;
        t.payload = std::move(p);
        t.pools = snap;
        rollouts.push_back(std::move(t));
        owner.push_back(i);
      }
    }
    std::vector<EvaluationReport> merged(num_agents_);
    std::vector<double> weighted_sum(num_agents_, 0.0);
    std::size_t k = 0;
    for (TaskResult& r : run_tasks(std::move(rollouts))) {
      const EvaluationReport& rep = std::get<EvaluationReport>(r);
      const int i = owner[k++];
      merged[i].episodes += rep.episodes;
      merged[i].steps += rep.steps;
      weighted_sum[i] += rep.eval_rollout * rep.episodes;
      env_steps_ += rep.steps;
    }
    std::vector<TaskDescriptor> training;
    std::vector<int> trained;
    for (int i = 0; i < num_agents_; ++i) {
      if (!active[i]) continue;
      merged[i].eval_rollout = merged[i].episodes > 0 ? weighted_sum[i] / merged[i].episodes : 0.0;
      reports[i].push_back(merged[i]);
      training.push_back(training_task(i, rl.updates_per_epoch, false));
      trained.push_back(i);
    }
    k = 0;
    for (TaskResult& r : run_tasks(std::move(training))) {
      const TrainingResult& tr = std::get<TrainingResult>(r);
      const int i = trained[k++];
      updates[i] = tr.updates_done;
      last_oracle_stats_[i] = tr.statistics;
      if (!reports[i].empty()) reports[i].back().eval_train = tr.statistics.count("eval_train")
                                                                  ? tr.statistics.at("eval_train")
                                                                  : 0.0;
      if (check_stop(reports[i], {}, updates[i], stoppers).stop) active[i] = false;
    }
  }
  std::vector<TaskDescriptor> finals;
  for (int i = 0; i < num_agents_; ++i) finals.push_back(training_task(i, 0, true));
  std::vector<TabularPolicy> out;
  for (TaskResult& r : run_tasks(std::move(finals))) {
    out.push_back(std::move(*std::get<TrainingResult>(r).policy));
  }
  return out;
}

std::vector<TabularPolicy> Coordinator::train_q_async(int iteration,
                                                      const std::vector<PolicyId>& ids,
                                                      const MetaStrategy& opponents,
                                                      const PoolSnapshot& snap) {
  const QLearningConfig& rl = config_.oracle.q_learning;
  const StopperConfig stoppers = config_.inner_stoppers();
  for (int i = 0; i < num_agents_; ++i) dataset_->clear(i);
  std::map<TaskId, TaskDescriptor> in_flight;
  std::vector<std::int64_t> issued(num_agents_, 0);
  std::vector<int> chunks(num_agents_, 0);
  std::vector<std::optional<TabularPolicy>> result(num_agents_);
  auto submit_rollout = [&](int i) {
    const int size = static_cast<int>(
        std::min<std::int64_t>(rl.episodes_per_epoch, stoppers.max_episodes - issued[i]));
    if (size <= 0) return;
    issued[i] += size;
    RolloutPayload p{iteration, i, ids[i], opponents, size,
                     derive_seed(config_.seed, "rollout/" + std::to_string(iteration) + "/" +
                                                   std::to_string(i) + "/" +
                                                   std::to_string(chunks[i]++))};
    TaskDescriptor t;
    t.kind = TaskKind::kRollout;
    t.payload = std::move(p);
    t.pools = snap;
    const TaskId id = submit(t);
    in_flight.emplace(id, std::move(t));
  };
  for (int i = 0; i < num_agents_; ++i) {
    TrainingPayload p;
    p.iteration = iteration;
    p.agent = i;
    p.policy_id = ids[i];
    p.opponent_meta = opponents;
    p.exact = false;
    p.run_to_budget = true;
    p.stoppers = stoppers;
    p.seed = derive_seed(config_.seed, "learner/" + std::to_string(iteration) + "/" +
                                           std::to_string(i));
    TaskDescriptor t;
    t.kind = TaskKind::kTraining;
    t.payload = std::move(p);
    t.pools = snap;
    const TaskId id = submit(t);
    in_flight.emplace(id, std::move(t));
    for (int a = 0; a < config_.runtime.num_actors; ++a) submit_rollout(i);
  }
  while (!in_flight.empty()) {
    CompletionReport report = executor_->next();
    auto it = in_flight.find(report.task_id);
    if (it == in_flight.end()) throw RuntimeFailure("unexpected completion during async training");
    TaskDescriptor task = std::move(it->second);
    in_flight.erase(it);
    if (!report.ok) {
      if (task.attempt >= config_.runtime.max_retries) {
        throw RuntimeFailure(std::string(task_kind_name(task.kind)) + " task failed " +
                             std::to_string(task.attempt + 1) + " times: " + report.error);
      }
      ++task.attempt;
      const TaskId id = submit(task);
      in_flight.emplace(id, std::move(task));
      continue;
    }
    if (task.kind == TaskKind::kRollout) {
      const int i = std::get<RolloutPayload>(task.payload).agent;
      env_steps_ += std::get<EvaluationReport>(report.result).steps;
      if (!result[i]) submit_rollout(i);
    } else {
      const int i = std::get<TrainingPayload>(task.payload).agent;
      TrainingResult& tr = std::get<TrainingResult>(report.result);
      last_oracle_stats_[i] = tr.statistics;
      result[i] = std::move(*tr.policy);
    }
  }
  std::vector<TabularPolicy> out;
  for (auto& r : result) out.push_back(std::move(*r));
  return out;
}

ExploitabilityReport Coordinator::evaluate(int iteration, const MetaStrategy& meta) {
  if (!config_.evaluate_exploitability) {
    ExploitabilityReport r;
    r.best_response_values.assign(num_agents_, 0.0);
    r.on_policy_values.assign(num_agents_, 0.0);
    r.gains.assign(num_agents_, 0.0);
    return r;
  }
  TaskDescriptor t;
  t.kind = TaskKind::kEvaluation;
  t.payload = EvaluationPayload{iteration, meta};
  t.pools = snapshot();
  std::vector<TaskDescriptor> tasks;
  tasks.push_back(std::move(t));
  return std::get<ExploitabilityReport>(run_tasks(std::move(tasks)).front());
}

void Coordinator::check_frozen_digests() const {
  for (const PolicyPool& pool : pools_) {
    for (const PolicyId& id : pool.frozen()) {
      auto it = frozen_digests_.find(id);
      if (it == frozen_digests_.end() || it->second != parameter_digest(*pool.get(id))) {
        throw RuntimeFailure("frozen policy " + id + " changed");
      }
    }
  }
}

RunSummary Coordinator::run(MetricsSink* sink) {
  start_ = std::chrono::steady_clock::now();
  executor_->start();
  RunSummary summary;
  MetaStrategy meta;
  const bool exact = config_.oracle.name == "exact";
  auto emit = [&](int iteration, const MetaStrategy& m, const ExploitabilityReport& er,
                  const std::vector<double>& nash, const std::vector<double>& weighted,
                  bool converged) {
    MetricsRow row;
    row.iteration = iteration;
    row.wall_time_s = elapsed();
    for (const PolicyPool& p : pools_) row.pool_size.push_back(static_cast<int>(p.size()));
    row.exploitability = er.exploitability;
    row.nash_conv = er.nash_conv;
    row.nash_payoffs = nash;
    row.weighted_payoffs = weighted;
    row.env_steps_total = env_steps_;
    row.steps_per_second = row.wall_time_s > 0.0 ? env_steps_ / row.wall_time_s : 0.0;
    row.extra["meta_strategy"] = meta_to_json(m);
    row.extra["converged"] = converged;
    row.extra["best_response_values"] = er.best_response_values;
    row.extra["exploitability_evaluated"] = config_.evaluate_exploitability;
    nlohmann::json stats = nlohmann::json::object();
    for (const auto& [agent, s] : last_oracle_stats_) stats[agent_name(agent)] = s;
    row.extra["oracle_stats"] = stats;
    if (sink) sink->write(row);
    if (hooks_.on_iteration) hooks_.on_iteration(row);
    spdlog::debug("iteration {}: pools {} exploitability {:.6g}", iteration,
                  nlohmann::json(row.pool_size).dump(), row.exploitability);
    rows_.push_back(std::move(row));
  };
  auto target_reached = [&](const ExploitabilityReport& er) {
    if (!config_.stoppers.target_exploitability || !config_.evaluate_exploitability) return false;
    const double v =
        config_.stoppers.target_metric == "nash_conv" ? er.nash_conv : er.exploitability;
    return v <= *config_.stoppers.target_exploitability;
  };
  try {
    bootstrap();
    meta = solve_restricted();
    const PayoffTable table0 = evaluator_->snapshot();
    const std::vector<double> nash0 = aggregate(table0, meta);
    ExploitabilityReport er = evaluate(0, meta);
    emit(0, meta, er, nash0, nash0, false);
    summary.iterations = 0;
    if (target_reached(er)) {
      summary.stop_reason = "target_reached";
    } else if (config_.algorithm.max_iterations == 0) {
      summary.stop_reason = "max_iterations";
    }
    for (int t = 1; summary.stop_reason.empty(); ++t) {
      const MetaStrategy opponents = opponent_meta_for_training(meta);
      std::vector<PolicyId> ids;
      for (int i = 0; i < num_agents_; ++i) {
        const PolicyId id = pools_[i].next_policy_id();
        TabularPolicy init(id);
        if (config_.algorithm.new_policy_init == "copy_last") {
          for (const auto& [key, probs] : pools_[i].at(pools_[i].size() - 1)->table()) {
            init.set(key, probs);
          }
        }
        init.set_version(1);
        params_->push(id, serialize_parameters(init), 1);
        pools_[i].extend(std::move(init));
        ids.push_back(id);
      }
      const PoolSnapshot snap = snapshot();
      std::vector<TabularPolicy> trained;
      if (exact) {
        trained = train_exact(t, ids, opponents, snap);
      } else if (config_.runtime.training == "async") {
        trained = train_q_async(t, ids, opponents, snap);
      } else {
        trained = train_q_sync(t, ids, opponents, snap);
      }
      for (int i = 0; i < num_agents_; ++i) {
        trained[i].set_id(ids[i]);
        trained[i].set_trainable(true);
        pools_[i].replace(ids[i], std::move(trained[i]));
        pools_[i].freeze(ids[i]);
        params_->freeze(ids[i]);
        frozen_digests_[ids[i]] = parameter_digest(*pools_[i].get(ids[i]));
      }
      simulate_new_entries(t);
      const PayoffTable table = evaluator_->snapshot();
      const MetaStrategy reference = align_to_pools(opponents, pools_);
      const std::vector<double> nash_ref = aggregate(table, reference);
      std::vector<double> weighted(num_agents_);
      for (int i = 0; i < num_agents_; ++i) {
        weighted[i] = aggregate(table, reference, {{i, ids[i]}})[i];
      }
      const bool converged =
          config_.algorithm.check_convergence &&
          psro_converged(weighted, nash_ref, config_.algorithm.convergence_epsilon);
      meta = converged ? align_to_pools(meta, pools_) : solve_restricted();
      const std::vector<double> nash = aggregate(table, meta);
      er = evaluate(t, meta);
      emit(t, meta, er, nash, weighted, converged);
      check_frozen_digests();
      summary.iterations = t;
      if (converged) {
        summary.stop_reason = "converged";
      } else if (target_reached(er)) {
        summary.stop_reason = "target_reached";
      } else if (t >= config_.algorithm.max_iterations) {
        summary.stop_reason = "max_iterations";
      }
    }
  } catch (const std::exception& e) {
    spdlog::error("run aborted: {}", e.what());
    summary.stop_reason = "failure";
    summary.error = e.what();
  }
  executor_->stop();
  summary.final_meta = meta;
  if (!rows_.empty()) {
    summary.final_exploitability = rows_.back().exploitability;
    summary.final_nash_conv = rows_.back().nash_conv;
  }
  summary.total_env_steps = env_steps_;
  summary.wall_time_s = elapsed();
  for (const PolicyPool& p : pools_) summary.pool_sizes.push_back(static_cast<int>(p.size()));
  summary.tasks = dispatcher_->counters();
  if (config_.runtime.task_log) summary.task_audit = audit_task_log(dispatcher_->log(), summary.tasks);
  summary.parameter_audit_ok = audit_no_push_after_freeze(params_->audit_log());
  return summary;
}

RunSummary coordinator_run(const ExperimentConfig& config, MetricsSink* sink) {
  Coordinator coordinator(config);
  return coordinator.run(sink);
}

}  // namespace pbmarl
