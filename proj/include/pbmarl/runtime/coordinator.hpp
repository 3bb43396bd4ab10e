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

#ifndef PBMARL_RUNTIME_COORDINATOR_HPP_
#define PBMARL_RUNTIME_COORDINATOR_HPP_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "pbmarl/evaluation/metrics.hpp"
#include "pbmarl/runtime/config.hpp"
#include "pbmarl/runtime/tasks.hpp"
#include "pbmarl/runtime/workers.hpp"

namespace pbmarl {

struct CoordinatorHooks {
  // Returning true makes the given task fail on its worker (fault injection).
  std::function<bool(const TaskDescriptor&)> inject_failure;
  std::function<void(const MetricsRow&)> on_iteration;
};

struct RunSummary {
  std::string stop_reason;  // converged | target_reached | max_iterations | failure
  int iterations = 0;
  double final_exploitability = 0.0;
  double final_nash_conv = 0.0;
  std::int64_t total_env_steps = 0;
  double wall_time_s = 0.0;
  MetaStrategy final_meta;
  std::vector<int> pool_sizes;
  TaskCounters tasks;
  std::string task_audit;  // empty when the task log passed the audit (or was not kept)
  bool parameter_audit_ok = true;
  std::string error;

  // 0 converged/success, 2 budget exhausted, 4 runtime failure.
  int exit_code() const;
  RunSummaryRecord record() const;
};

// Drives workers. The inline executor runs every worker on the calling
// thread in a fixed order; the threaded executor gives each its own thread.
class Executor {
 public:
  virtual ~Executor() = default;
  virtual void start() = 0;
  virtual CompletionReport next() = 0;
  virtual void stop() = 0;
};

class Coordinator {
 public:
  explicit Coordinator(ExperimentConfig config, CoordinatorHooks hooks = {});
  ~Coordinator();

  RunSummary run(MetricsSink* sink = nullptr);

  const ExperimentConfig& config() const { return config_; }
  PayoffTable table() const { return evaluator_->snapshot(); }
  const std::vector<PolicyPool>& pools() const { return pools_; }
  const Dispatcher& dispatcher() const { return *dispatcher_; }
  const ParameterServer& parameter_server() const { return *params_; }
  const std::vector<MetricsRow>& rows() const { return rows_; }

 private:
  struct Iteration;

  void bootstrap();
  MetaStrategy opponent_meta_for_training(const MetaStrategy& current) const;
  MetaStrategy solve_restricted() const;
  std::vector<TabularPolicy> train_exact(int iteration, const std::vector<PolicyId>& ids,
                                         const MetaStrategy& opponents, const PoolSnapshot& snap);
  std::vector<TabularPolicy> train_q_sync(int iteration, const std::vector<PolicyId>& ids,
                                          const MetaStrategy& opponents, const PoolSnapshot& snap);
  std::vector<TabularPolicy> train_q_async(int iteration, const std::vector<PolicyId>& ids,
                                           const MetaStrategy& opponents,
                                           const PoolSnapshot& snap);
  void simulate_new_entries(int iteration);
  ExploitabilityReport evaluate(int iteration, const MetaStrategy& meta);
  std::vector<TaskResult> run_tasks(std::vector<TaskDescriptor> tasks);
  TaskId submit(TaskDescriptor task);
  void check_frozen_digests() const;
  PoolSnapshot snapshot() const;
  double elapsed() const;

  ExperimentConfig config_;
  CoordinatorHooks hooks_;
  std::shared_ptr<const Game> game_;
  int num_agents_;
  std::unique_ptr<ParameterServer> params_;
  std::unique_ptr<DatasetServer> dataset_;
  std::unique_ptr<Evaluator> evaluator_;
  std::unique_ptr<Dispatcher> dispatcher_;
  std::vector<std::unique_ptr<Worker>> workers_;
  std::unique_ptr<Executor> executor_;
  std::vector<PolicyPool> pools_;
  std::map<PolicyId, std::uint64_t> frozen_digests_;
  std::vector<MetricsRow> rows_;
  std::map<int, Statistics> last_oracle_stats_;
  std::int64_t env_steps_ = 0;
  std::chrono::steady_clock::time_point start_;
  bool timing_ = true;
};

RunSummary coordinator_run(const ExperimentConfig& config, MetricsSink* sink = nullptr);

}  // namespace pbmarl

#endif  // PBMARL_RUNTIME_COORDINATOR_HPP_
