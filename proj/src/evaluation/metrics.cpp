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

#include "pbmarl/evaluation/metrics.hpp"

#include <cstdio>
#include <filesystem>

#include "pbmarl/common.hpp"

namespace pbmarl {
namespace {

using nlohmann::json;

void require(const json& record, const char* field, bool ok) {
  if (!record.contains(field)) {
    throw InvalidArgument(std::string("metrics record is missing field \"") + field + "\"");
  }
  if (!ok) throw InvalidArgument(std::string("metrics field \"") + field + "\" has the wrong type");
}

bool number_array(const json& v) {
  if (!v.is_array()) return false;
  for (const json& x : v) {
    if (!x.is_number()) return false;
  }
  return true;
}

}  // namespace

void validate_metrics_record(const json& record) {
  if (!record.is_object()) throw InvalidArgument("metrics record is not an object");
  auto get = [&](const char* f) { return record.contains(f) ? record.at(f) : json(); };
  require(record, "iteration", get("iteration").is_number_integer());
  require(record, "wall_time_s", get("wall_time_s").is_number());
  require(record, "pool_size", number_array(get("pool_size")));
  require(record, "exploitability", get("exploitability").is_number());
  require(record, "nash_payoffs", number_array(get("nash_payoffs")));
  require(record, "weighted_payoffs", number_array(get("weighted_payoffs")));
  require(record, "env_steps_total", get("env_steps_total").is_number_integer());
  require(record, "steps_per_second", get("steps_per_second").is_number());
  if (record.at("nash_payoffs").size() != record.at("pool_size").size() ||
      record.at("weighted_payoffs").size() != record.at("pool_size").size()) {
    throw InvalidArgument("metrics record has per-agent fields of different lengths");
  }
}

json MetricsRow::to_json() const {
  json j = extra;
  j["iteration"] = iteration;
  j["wall_time_s"] = wall_time_s;
  j["pool_size"] = pool_size;
  j["exploitability"] = exploitability;
  j["nash_conv"] = nash_conv;
  j["nash_payoffs"] = nash_payoffs;
  j["weighted_payoffs"] = weighted_payoffs;
  j["env_steps_total"] = env_steps_total;
  j["steps_per_second"] = steps_per_second;
  return j;
}

MetricsRow MetricsRow::from_json(const json& record) {
  validate_metrics_record(record);
  MetricsRow row;
  row.iteration = record.at("iteration").get<int>();
  row.wall_time_s = record.at("wall_time_s").get<double>();
  row.pool_size = record.at("pool_size").get<std::vector<int>>();
  row.exploitability = record.at("exploitability").get<double>();
  row.nash_conv = record.value("nash_conv", 0.0);
  row.nash_payoffs = record.at("nash_payoffs").get<std::vector<double>>();
  row.weighted_payoffs = record.at("weighted_payoffs").get<std::vector<double>>();
  row.env_steps_total = record.at("env_steps_total").get<std::int64_t>();
  row.steps_per_second = record.at("steps_per_second").get<double>();
  for (const auto& [key, value] : record.items()) {
    static const char* kCore[] = {"iteration",        "wall_time_s",    "pool_size",
                                  "exploitability",   "nash_conv",      "nash_payoffs",
                                  "weighted_payoffs", "env_steps_total", "steps_per_second"};
    bool core = false;
    for (const char* c : kCore) core = core || key == c;
    if (!core) row.extra[key] = value;
  }
  return row;
}

MetricsSink::MetricsSink(const std::string& path) : path_(path), out_(path, std::ios::trunc) {
  if (!out_) throw RuntimeFailure("cannot open metrics file " + path);
}

void MetricsSink::write(const json& record) {
  validate_metrics_record(record);
  out_ << record.dump() << '\n';
  out_.flush();
  if (!out_) throw RuntimeFailure("cannot write metrics file " + path_);
  ++rows_;
}

std::vector<json> read_metrics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open metrics file " + path);
  std::vector<json> rows;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InvalidArgument(path + ":" + std::to_string(number) + ": " + e.what());
    }
    validate_metrics_record(record);
    rows.push_back(std::move(record));
  }
  return rows;
}

json RunSummaryRecord::to_json() const {
  json j = extra;
  j["stop_reason"] = stop_reason;
  j["iterations"] = iterations;
  j["final_exploitability"] = final_exploitability;
  j["final_nash_conv"] = final_nash_conv;
  j["total_env_steps"] = total_env_steps;
  j["wall_time_s"] = wall_time_s;
  return j;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
    if (!out) throw RuntimeFailure("cannot open " + tmp);
    out << content;
    out.flush();
    if (!out) throw RuntimeFailure("cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw RuntimeFailure("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

}  // namespace pbmarl
