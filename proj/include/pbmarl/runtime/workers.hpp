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

#ifndef PBMARL_RUNTIME_WORKERS_HPP_
#define PBMARL_RUNTIME_WORKERS_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "pbmarl/game/game.hpp"
#include "pbmarl/oracle/q_learning.hpp"
#include "pbmarl/runtime/dataset_server.hpp"
#include "pbmarl/runtime/parameter_server.hpp"
#include "pbmarl/runtime/rollout.hpp"
#include "pbmarl/runtime/tasks.hpp"

namespace pbmarl {

class Worker {
 public:
  Worker(std::string id, WorkerRole role, int agent = -1)
      : id_(std::move(id)), role_(role), agent_(agent) {}
  virtual ~Worker() = default;

  const std::string& id() const { return id_; }
  WorkerRole role() const { return role_; }
  int agent() const { return agent_; }

  // Never throws: failures become reports with ok = false.
  CompletionReport run(const TaskDescriptor& task);

  // Test hook: returning true makes the task fail before it is handled.
  void set_fault_injector(std::function<bool(const TaskDescriptor&)> f) {
    fault_injector_ = std::move(f);
  }

 protected:
  virtual TaskResult handle(const TaskDescriptor& task) = 0;

 private:
  std::string id_;
  WorkerRole role_;
  int agent_;
  std::function<bool(const TaskDescriptor&)> fault_injector_;
};

// Rollout and simulation tasks.
class ActorWorker : public Worker {
 public:
  ActorWorker(std::string id, std::shared_ptr<const Game> game, int num_envs,
              const ParameterServer* params, DatasetServer* dataset, Evaluator* evaluator);

 protected:
  TaskResult handle(const TaskDescriptor& task) override;

 private:
  RolloutWorker rollout_;
  Evaluator* evaluator_;
};

// Training tasks for one agent: exact best response or tabular Q-learning.
class LearnerWorker : public Worker {
 public:
  LearnerWorker(std::string id, int agent, std::shared_ptr<const Game> game,
                ParameterServer* params, DatasetServer* dataset, QLearningConfig rl);

 protected:
  TaskResult handle(const TaskDescriptor& task) override;

 private:
  struct Session {
    std::unique_ptr<QLearningOracle> oracle;
    Rng rng;
  };
  std::shared_ptr<const Game> game_;
  ParameterServer* params_;
  DatasetServer* dataset_;
  QLearningConfig rl_;
  std::map<PolicyId, Session> sessions_;
};

// Evaluation tasks: exact exploitability of a meta-strategy.
class EvaluatorWorker : public Worker {
 public:
  EvaluatorWorker(std::string id, std::shared_ptr<const Game> game);

 protected:
  TaskResult handle(const TaskDescriptor& task) override;

 private:
  std::shared_ptr<const Game> game_;
};

}  // namespace pbmarl

#endif  // PBMARL_RUNTIME_WORKERS_HPP_
