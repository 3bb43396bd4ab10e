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

#ifndef PBMARL_EVALUATION_METRICS_HPP_
#define PBMARL_EVALUATION_METRICS_HPP_

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pbmarl {

struct MetricsRow {
  int iteration = 0;
  double wall_time_s = 0.0;
  std::vector<int> pool_size;
  double exploitability = 0.0;
  double nash_conv = 0.0;
  std::vector<double> nash_payoffs;
  std::vector<double> weighted_payoffs;
  std::int64_t env_steps_total = 0;
  double steps_per_second = 0.0;
  nlohmann::json extra = nlohmann::json::object();  // merged into the record

  nlohmann::json to_json() const;
  static MetricsRow from_json(const nlohmann::json& record);
};

// Throws InvalidArgument naming the first missing or mistyped field.
void validate_metrics_record(const nlohmann::json& record);

// Line-delimited JSON, one record per line, flushed on every write.
class MetricsSink {
 public:
  explicit MetricsSink(const std::string& path);

  void write(const nlohmann::json& record);
  void write(const MetricsRow& row) { write(row.to_json()); }
  const std::string& path() const { return path_; }
  std::size_t rows() const { return rows_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t rows_ = 0;
};

std::vector<nlohmann::json> read_metrics(const std::string& path);

struct RunSummaryRecord {
  std::string stop_reason;
  int iterations = 0;
  double final_exploitability = 0.0;
  double final_nash_conv = 0.0;
  std::int64_t total_env_steps = 0;
  double wall_time_s = 0.0;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
};

// Writes `content` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace pbmarl

#endif  // PBMARL_EVALUATION_METRICS_HPP_
