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

#include "pbmarl/runtime/workers.hpp"

#include "pbmarl/evaluation/exploitability.hpp"
#include "pbmarl/oracle/best_response.hpp"

namespace pbmarl {
namespace {

class DatasetSource : public DataSource {
 public:
  DatasetSource(DatasetServer& dataset, int agent, Rng& rng)
      : dataset_(dataset), agent_(agent), rng_(rng) {}
  void advance(int) override {}
  SampleBatch sample(int n) override { return dataset_.sample(agent_, n, rng_); }

 private:
  DatasetServer& dataset_;
  int agent_;
  Rng& rng_;
};

}  // namespace

CompletionReport Worker::run(const TaskDescriptor& task) {
  CompletionReport report;
  report.task_id = task.task_id;
  report.worker_id = id_;
  try {
    if (fault_injector_ && fault_injector_(task)) throw RuntimeFailure("injected failure");
    report.result = handle(task);
  } catch (const std::exception& e) {
    report.ok = false;
    report.error = e.what();
  }
  return report;
}

ActorWorker::ActorWorker(std::string id, std::shared_ptr<const Game> game, int num_envs,
                         const ParameterServer* params, DatasetServer* dataset,
                         Evaluator* evaluator)
    : Worker(std::move(id), WorkerRole::kActor),
      rollout_(std::move(game), num_envs, params, dataset),
      evaluator_(evaluator) {}

TaskResult ActorWorker::handle(const TaskDescriptor& task) {
  if (task.kind == TaskKind::kRollout) {
    const auto& p = std::get<RolloutPayload>(task.payload);
    RolloutRequest request;
    request.meta = p.meta;
    request.overrides = {{p.agent, p.policy_id}};
    request.collect_agents = {p.agent};
    request.num_episodes = p.num_episodes;
    request.seed = p.seed;
    return rollout_.rollout(request, task.pools);
  }
  if (task.kind == TaskKind::kSimulation) {
    const auto& p = std::get<SimulationPayload>(task.payload);
    EvaluationReport report = rollout_.simulate(p.simulation, p.seed, task.pools);
    if (evaluator_) evaluator_->record_simulation(p.simulation.index, report);
    return report;
  }
  throw InvalidArgument(std::string("actor cannot run ") + task_kind_name(task.kind) + " tasks");
}

LearnerWorker::LearnerWorker(std::string id, int agent, std::shared_ptr<const Game> game,
                             ParameterServer* params, DatasetServer* dataset, QLearningConfig rl)
    : Worker(std::move(id), WorkerRole::kLearner, agent),
      game_(std::move(game)),
      params_(params),
      dataset_(dataset),
      rl_(rl) {}

TaskResult LearnerWorker::handle(const TaskDescriptor& task) {
  if (task.kind != TaskKind::kTraining) {
    throw InvalidArgument(std::string("learner cannot run ") + task_kind_name(task.kind) +
                          " tasks");
  }
  const auto& p = std::get<TrainingPayload>(task.payload);
  if (p.agent != agent()) throw InvalidArgument("training task for another agent");
  TrainingResult result;
  if (p.exact) {
    BestResponse br = exact_best_response(*game_, p.agent, p.opponent_meta, *task.pools,
                                          p.policy_id);
    const std::uint64_t version = params_->version(p.policy_id) + 1;
    br.policy.set_version(version);
    params_->push(p.policy_id, serialize_parameters(br.policy), version);
    result.value = br.value;
    result.statistics = {{"best_response_value", br.value}};
    result.policy = std::move(br.policy);
    return result;
  }
  auto it = sessions_.find(p.policy_id);
  if (it == sessions_.end()) {
    OracleTask oracle_task{p.agent, p.policy_id, p.opponent_meta, rl_,
                           params_->version(p.policy_id)};
    it = sessions_.emplace(p.policy_id,
                           Session{std::make_unique<QLearningOracle>(oracle_task), Rng(p.seed)})
             .first;
  }
  Session& session = it->second;
  DatasetSource source(*dataset_, p.agent, session.rng);
  if (p.run_to_budget) {
    const std::int64_t budget =
        p.stoppers.train_budget > 0 ? p.stoppers.train_budget : rl_.total_updates();
    while (session.oracle->updates_done() < budget) {
      const int chunk = static_cast<int>(
          std::min<std::int64_t>(rl_.updates_per_epoch, budget - session.oracle->updates_done()));
      result.statistics = session.oracle->train(source, *params_, chunk);
    }
  } else if (p.updates > 0) {
    result.statistics = session.oracle->train(source, *params_, p.updates);
  }
  result.updates_done = session.oracle->updates_done();
  result.statistics["updates_total"] = static_cast<double>(result.updates_done);
  result.statistics["epsilon"] = session.oracle->epsilon();
  if (p.finalize || p.run_to_budget) {
    TabularPolicy policy = session.oracle->result();
    const std::uint64_t version = params_->version(p.policy_id) + 1;
    policy.set_version(version);
    params_->push(p.policy_id, serialize_parameters(policy), version);
    result.policy = std::move(policy);
    sessions_.erase(it);
  }
  return result;
}

EvaluatorWorker::EvaluatorWorker(std::string id, std::shared_ptr<const Game> game)
    : Worker(std::move(id), WorkerRole::kEvaluator), game_(std::move(game)) {}

TaskResult EvaluatorWorker::handle(const TaskDescriptor& task) {
  if (task.kind != TaskKind::kEvaluation) {
    throw InvalidArgument(std::string("evaluator cannot run ") + task_kind_name(task.kind) +
                          " tasks");
  }
  const auto& p = std::get<EvaluationPayload>(task.payload);
  return exploitability(*game_, p.meta, *task.pools);
}

}  // namespace pbmarl
