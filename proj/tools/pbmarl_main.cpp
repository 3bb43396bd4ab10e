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


// Command-line front end: run, bench, dump-payoffs, validate.

#include <fcntl.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <spdlog/cfg/helpers.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "pbmarl/evaluation/metrics.hpp"
#include "pbmarl/runtime/bench.hpp"
#include "pbmarl/runtime/config.hpp"
#include "pbmarl/runtime/coordinator.hpp"

namespace fs = std::filesystem;

namespace pbmarl {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 3;
constexpr int kExitFailure = 4;

constexpr char kMetricsFile[] = "metrics.jsonl";
constexpr char kSummaryFile[] = "summary.json";
constexpr char kPayoffFile[] = "payoff_table.tsv";
constexpr char kResolvedFile[] = "config.resolved.json";
constexpr char kLockFile[] = ".lock";

// Thrown for errors in user input that map to the validation exit code.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DirectoryLock {
 public:
  explicit DirectoryLock(const fs::path& dir) : path_(dir / kLockFile) {
    fs::create_directories(dir);
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0) {
      throw RuntimeFailure("output directory " + dir.string() + " is in use (" + path_.string() +
                           " exists)");
    }
    const std::string pid = std::to_string(::getpid()) + "\n";
    if (::write(fd_, pid.data(), pid.size()) < 0) spdlog::warn("could not write {}", path_.string());
  }
  ~DirectoryLock() {
    ::close(fd_);
    std::error_code ec;
    fs::remove(path_, ec);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  fs::path path_;
  int fd_ = -1;
};

nlohmann::json load_config(const std::string& path, const std::vector<std::string>& overrides) {
  try {
    return apply_overrides(read_json_file(path), overrides);
  } catch (const std::exception& e) {
    throw ValidationError(e.what());
  }
}

ExperimentConfig parse_experiment(const nlohmann::json& j) {
  try {
    return ExperimentConfig::from_json(j);
  } catch (const InvalidArgument& e) {
    throw ValidationError(e.what());
  } catch (const NotFound& e) {
    throw ValidationError(e.what());
  }
}

int cmd_validate(const std::string& config_path, const std::vector<std::string>& overrides) {
  const nlohmann::json j = load_config(config_path, overrides);
  if (j.contains("bench")) {
    try {
      for (const std::string& w : BenchConfig::from_json(j).validate()) spdlog::warn("{}", w);
    } catch (const std::exception& e) {
      throw ValidationError(e.what());
    }
  } else {
    parse_experiment(j);
  }
  std::cout << config_path << ": ok\n";
  return kExitOk;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            const fs::path& out) {
  const nlohmann::json j = load_config(config_path, overrides);
  const ExperimentConfig config = parse_experiment(j);
  DirectoryLock lock(out);
  write_file_atomic((out / kResolvedFile).string(), config.to_json().dump(2) + "\n");
  Coordinator coordinator(config);
  RunSummary summary;
  {
    MetricsSink sink((out / kMetricsFile).string());
    summary = coordinator.run(&sink);
  }
  write_file_atomic((out / kPayoffFile).string(), coordinator.table().dump());
  write_file_atomic((out / kSummaryFile).string(), summary.record().to_json().dump(2) + "\n");
  std::cout << "stop_reason=" << summary.stop_reason << " iterations=" << summary.iterations
            << " exploitability=" << summary.final_exploitability << " out=" << out.string()
            << "\n";
  if (!summary.error.empty()) std::cerr << "error: " << summary.error << "\n";
  return summary.exit_code();
}

int cmd_bench(const std::string& config_path, const fs::path& out) {
  const nlohmann::json j = load_config(config_path, {});
  BenchConfig config;
  try {
    config = BenchConfig::from_json(j);
    for (const std::string& w : config.validate()) spdlog::warn("{}", w);
  } catch (const std::exception& e) {
    throw ValidationError(e.what());
  }
  DirectoryLock lock(out);
  const std::vector<BenchRow> rows = run_throughput_bench(config);
  const std::string table = format_bench_table(rows);
  write_file_atomic((out / "bench.tsv").string(), table);
  std::cout << table;
  return kExitOk;
}

int cmd_dump_payoffs(const fs::path& dir, const std::string& out_file) {
  const fs::path path = dir / kPayoffFile;
  std::ifstream in(path);
  if (!in) throw NotFound("payoff table not found: expected " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string dumped = PayoffTable::parse_dump(buffer.str()).dump();
  if (out_file.empty()) {
    std::cout << dumped;
  } else {
    write_file_atomic(out_file, dumped);
  }
  return kExitOk;
}

}  // namespace
}  // namespace pbmarl

int main(int argc, char** argv) {
  using namespace pbmarl;
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("PBMARL_LOG")) spdlog::cfg::helpers::load_levels(level);

  CLI::App app{"Population-based multi-agent training runtime"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out = "out";
  std::string dump_out;

  CLI::App* run = app.add_subcommand("run", "Run an experiment");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--set", overrides, "Override a config value: key.path=value");
  run->add_option("--out", out, "Output directory");

  CLI::App* bench = app.add_subcommand("bench", "Measure rollout throughput");
  bench->add_option("config", config_path, "Bench config (JSON)")->required();
  bench->add_option("--out", out, "Output directory");

  CLI::App* dump = app.add_subcommand("dump-payoffs", "Re-dump a run's payoff table");
  dump->add_option("dir", out, "Run directory")->required();
  dump->add_option("--out", dump_out, "Write to this file instead of stdout");

  CLI::App* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("config", config_path, "Config (JSON)")->required();
  validate->add_option("--set", overrides, "Override a config value: key.path=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*run) return cmd_run(config_path, overrides, out);
    if (*bench) return cmd_bench(config_path, out);
    if (*dump) return cmd_dump_payoffs(out, dump_out);
    if (*validate) return cmd_validate(config_path, overrides);
  } catch (const ValidationError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
