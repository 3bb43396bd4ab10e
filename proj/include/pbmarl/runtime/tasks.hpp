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

#ifndef PBMARL_RUNTIME_TASKS_HPP_
#define PBMARL_RUNTIME_TASKS_HPP_

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pbmarl/evaluation/exploitability.hpp"
#include "pbmarl/oracle/q_learning.hpp"
#include "pbmarl/runtime/rollout.hpp"

namespace pbmarl {

using TaskId = std::uint64_t;

enum class TaskKind { kRollout, kTraining, kSimulation, kEvaluation, kWait, kTerminate };
enum class WorkerRole { kActor, kLearner, kEvaluator };

const char* task_kind_name(TaskKind kind);

struct RolloutPayload {
  int iteration = 0;
  int agent = 0;  // the trainable agent whose transitions are collected
  PolicyId policy_id;
  MetaStrategy meta;  // opponents' distribution; the agent's entry is overridden
  int num_episodes = 0;
  std::uint64_t seed = 0;
};

struct TrainingPayload {
  int iteration = 0;
  int agent = 0;
  PolicyId policy_id;
  MetaStrategy opponent_meta;
  bool exact = true;
  int updates = 0;        // optimize calls in this task (approximate oracle)
  bool finalize = false;  // return the learned policy and drop learner state
  bool run_to_budget = false;  // asynchronous mode: train until the stoppers fire
  StopperConfig stoppers;      // asynchronous mode only
  std::uint64_t seed = 0;
};

struct SimulationPayload {
  SimulationTask simulation;
  std::uint64_t seed = 0;
};

struct EvaluationPayload {
  int iteration = 0;
  MetaStrategy meta;
};

using TaskPayload = std::variant<std::monostate, RolloutPayload, TrainingPayload,
                                 SimulationPayload, EvaluationPayload>;

struct TaskDescriptor {
  TaskId task_id = 0;
  TaskKind kind = TaskKind::kWait;
  TaskPayload payload;
  std::uint64_t issued_at = 0;  // logical timestamp
  int attempt = 0;
  PoolSnapshot pools;
};

struct TrainingResult {
  std::optional<TabularPolicy> policy;  // set when finalized or exact
  Statistics statistics;
  double value = 0.0;  // exact oracle: best-response value
  std::int64_t updates_done = 0;
};

using TaskResult = std::variant<std::monostate, EvaluationReport, TrainingResult,
                                ExploitabilityReport>;

struct CompletionReport {
  TaskId task_id = 0;
  std::string worker_id;
  bool ok = true;
  std::string error;
  TaskResult result;
};

struct TaskCounters {
  std::uint64_t submitted = 0;
  std::uint64_t dispatched = 0;
  std::uint64_t completed = 0;
  std::uint64_t failed = 0;
  std::uint64_t in_flight = 0;
  std::uint64_t queued = 0;
};

struct TaskEvent {
  enum class Type { kSubmit, kDispatch, kComplete, kFail };
  std::uint64_t sequence = 0;
  Type type = Type::kSubmit;
  TaskId task_id = 0;
  TaskKind kind = TaskKind::kWait;
  std::string worker_id;
};

// Central task queue. Workers are semi-passive: they call request_task after
// finishing a task, handing back its report in the same call.
class Dispatcher {
 public:
  explicit Dispatcher(bool keep_log = false) : keep_log_(keep_log) {}

  void register_worker(const std::string& worker_id, WorkerRole role, int agent = -1);

  // Routes rollout and simulation tasks to actors, training tasks to the
  // learner of the payload's agent and evaluation tasks to evaluators.
  TaskId submit(TaskDescriptor task);

  // Records `last` (if any) and returns the next task, or a wait/terminate
  // directive. With block=true, waits until a task or shutdown arrives.
  TaskDescriptor request_task(const std::string& worker_id,
                              std::optional<CompletionReport> last, bool block = false);

  std::optional<CompletionReport> poll_completion();
  CompletionReport wait_completion();

  // Idle workers receive terminate from now on.
  void shutdown();
  bool is_shutdown() const;

  TaskCounters counters() const;
  std::vector<TaskEvent> log() const;
  std::vector<std::string> workers() const;

 private:
  struct WorkerState {
    WorkerRole role;
    int agent;
    std::set<TaskId> running;
  };
  std::string route_of(const TaskDescriptor& task) const;
  std::string route_of_worker(const WorkerState& w) const;
  void record(TaskEvent::Type type, const TaskDescriptor& task, const std::string& worker);
  void complete_locked(const std::string& worker_id, CompletionReport report);

  bool keep_log_;
  mutable std::mutex mu_;
  std::condition_variable work_cv_;
  std::condition_variable done_cv_;
  std::map<std::string, WorkerState> workers_;
  std::vector<std::string> worker_order_;
  std::map<std::string, std::deque<TaskDescriptor>> queues_;
  std::map<TaskId, TaskKind> in_flight_;
  std::set<TaskId> finished_;
  std::deque<CompletionReport> completions_;
  TaskCounters counters_;
  std::vector<TaskEvent> log_;
  TaskId next_id_ = 1;
  std::uint64_t clock_ = 0;
  bool shutdown_ = false;
};

// Checks that every dispatched task has exactly one completion or failure,
// that nothing completes without being dispatched, and that the counters
// satisfy dispatched = completed + failed + in-flight. Returns an empty
// string on success, otherwise a description of the first violation.
std::string audit_task_log(const std::vector<TaskEvent>& log, const TaskCounters& counters);

}  // namespace pbmarl

#endif  // PBMARL_RUNTIME_TASKS_HPP_
