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

#include "pbmarl/runtime/tasks.hpp"

#include <map>

namespace pbmarl {

const char* task_kind_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::kRollout: return "rollout";
    case TaskKind::kTraining: return "training";
    case TaskKind::kSimulation: return "simulation";
    case TaskKind::kEvaluation: return "evaluation";
    case TaskKind::kWait: return "wait";
    case TaskKind::kTerminate: return "terminate";
  }
  return "unknown";
}

void Dispatcher::register_worker(const std::string& worker_id, WorkerRole role, int agent) {
  std::lock_guard<std::mutex> lock(mu_);
  if (workers_.count(worker_id)) throw InvalidArgument("worker " + worker_id + " already registered");
  if (role == WorkerRole::kLearner && agent < 0) {
    throw InvalidArgument("learner " + worker_id + " needs an agent");
  }
  workers_[worker_id] = WorkerState{role, agent, {}};
  worker_order_.push_back(worker_id);
}

std::string Dispatcher::route_of(const TaskDescriptor& task) const {
  switch (task.kind) {
    case TaskKind::kRollout:
    case TaskKind::kSimulation:
      return "actor";
    case TaskKind::kTraining:
      return "learner/" + std::to_string(std::get<TrainingPayload>(task.payload).agent);
    case TaskKind::kEvaluation:
      return "evaluator";
    default:
      throw InvalidArgument(std::string("cannot submit a ") + task_kind_name(task.kind) + " task");
  }
}

std::string Dispatcher::route_of_worker(const WorkerState& w) const {
  switch (w.role) {
    case WorkerRole::kActor: return "actor";
    case WorkerRole::kLearner: return "learner/" + std::to_string(w.agent);
    case WorkerRole::kEvaluator: return "evaluator";
  }
  return "";
}

void Dispatcher::record(TaskEvent::Type type, const TaskDescriptor& task,
                        const std::string& worker) {
  if (!keep_log_) return;
  log_.push_back(TaskEvent{log_.size(), type, task.task_id, task.kind, worker});
}

TaskId Dispatcher::submit(TaskDescriptor task) {
  std::lock_guard<std::mutex> lock(mu_);
  if (shutdown_) throw RuntimeFailure("dispatcher is shut down");
  const std::string route = route_of(task);
  bool served = false;
  for (const auto& [id, w] : workers_) served = served || route_of_worker(w) == route;
  if (!served) throw InvalidArgument("no worker registered for " + route + " tasks");
  task.task_id = next_id_++;
  task.issued_at = ++clock_;
  ++counters_.submitted;
  ++counters_.queued;
  record(TaskEvent::Type::kSubmit, task, "");
  const TaskId id = task.task_id;
  queues_[route].push_back(std::move(task));
  work_cv_.notify_all();
  return id;
}

void Dispatcher::complete_locked(const std::string& worker_id, CompletionReport report) {
  WorkerState& w = workers_.at(worker_id);
  if (!w.running.count(report.task_id)) {
    if (finished_.count(report.task_id)) {
      throw InvalidArgument("duplicate completion for task " + std::to_string(report.task_id));
    }
    throw InvalidArgument("task " + std::to_string(report.task_id) + " is not running on " +
                          worker_id);
  }
  w.running.erase(report.task_id);
  TaskDescriptor stub;
  stub.task_id = report.task_id;
  stub.kind = in_flight_.at(report.task_id);
  in_flight_.erase(report.task_id);
  finished_.insert(report.task_id);
  --counters_.in_flight;
  if (report.ok) {
    ++counters_.completed;
    record(TaskEvent::Type::kComplete, stub, worker_id);
  } else {
    ++counters_.failed;
    record(TaskEvent::Type::kFail, stub, worker_id);
  }
  report.worker_id = worker_id;
  completions_.push_back(std::move(report));
  done_cv_.notify_all();
}

TaskDescriptor Dispatcher::request_task(const std::string& worker_id,
                                        std::optional<CompletionReport> last, bool block) {
  std::unique_lock<std::mutex> lock(mu_);
  auto it = workers_.find(worker_id);
  if (it == workers_.end()) throw NotFound("unknown worker " + worker_id);
  if (last) complete_locked(worker_id, std::move(*last));
  std::deque<TaskDescriptor>& queue = queues_[route_of_worker(it->second)];
  while (true) {
    if (shutdown_) {
      TaskDescriptor t;
      t.kind = TaskKind::kTerminate;
      return t;
    }
    if (!queue.empty()) {
      TaskDescriptor task = std::move(queue.front());
      queue.pop_front();
      --counters_.queued;
      ++counters_.dispatched;
      ++counters_.in_flight;
      in_flight_[task.task_id] = task.kind;
      it->second.running.insert(task.task_id);
      record(TaskEvent::Type::kDispatch, task, worker_id);
      return task;
    }
    if (!block) return TaskDescriptor{};
    work_cv_.wait(lock);
  }
}

std::optional<CompletionReport> Dispatcher::poll_completion() {
  std::lock_guard<std::mutex> lock(mu_);
  if (completions_.empty()) return std::nullopt;
  CompletionReport r = std::move(completions_.front());
  completions_.pop_front();
  return r;
}

CompletionReport Dispatcher::wait_completion() {
  std::unique_lock<std::mutex> lock(mu_);
  done_cv_.wait(lock, [&] { return !completions_.empty(); });
  CompletionReport r = std::move(completions_.front());
  completions_.pop_front();
  return r;
}

void Dispatcher::shutdown() {
  std::lock_guard<std::mutex> lock(mu_);
  shutdown_ = true;
  work_cv_.notify_all();
}

bool Dispatcher::is_shutdown() const {
  std::lock_guard<std::mutex> lock(mu_);
  return shutdown_;
}

TaskCounters Dispatcher::counters() const {
  std::lock_guard<std::mutex> lock(mu_);
  return counters_;
}

std::vector<TaskEvent> Dispatcher::log() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

std::vector<std::string> Dispatcher::workers() const {
  std::lock_guard<std::mutex> lock(mu_);
  return worker_order_;
}

std::string audit_task_log(const std::vector<TaskEvent>& log, const TaskCounters& counters) {
  std::map<TaskId, int> state;  // 1 submitted, 2 dispatched, 3 finished
  std::uint64_t dispatched = 0, completed = 0, failed = 0;
  for (const TaskEvent& e : log) {
    int& s = state[e.task_id];
    const std::string id = std::to_string(e.task_id);
    switch (e.type) {
      case TaskEvent::Type::kSubmit:
        if (s != 0) return "task " + id + " submitted twice";
        s = 1;
        break;
      case TaskEvent::Type::kDispatch:
        if (s != 1) return "task " + id + " dispatched without a pending submission";
        s = 2;
        ++dispatched;
        break;
      case TaskEvent::Type::kComplete:
      case TaskEvent::Type::kFail:
        if (s != 2) return "task " + id + " finished while not in flight";
        s = 3;
        ++(e.type == TaskEvent::Type::kComplete ? completed : failed);
        break;
    }
  }
  std::uint64_t in_flight = 0;
  for (const auto& [id, s] : state) in_flight += s == 2;
  if (dispatched != completed + failed + in_flight) return "log violates task conservation";
  if (counters.dispatched != dispatched || counters.completed != completed ||
      counters.failed != failed || counters.in_flight != in_flight) {
    return "counters disagree with the task log";
  }
  if (counters.dispatched != counters.completed + counters.failed + counters.in_flight) {
    return "counters violate task conservation";
  }
  return "";
}

}  // namespace pbmarl
