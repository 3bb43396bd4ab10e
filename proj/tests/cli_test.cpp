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


#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "pbmarl/evaluation/metrics.hpp"
#include "pbmarl/runtime/config.hpp"

namespace fs = std::filesystem;

namespace pbmarl {
namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pbmarl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const nlohmann::json& j) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << j.dump(2);
    return p;
  }

  // Runs the CLI with stdout and stderr captured; returns the exit code.
  int cli(const std::string& args) {
    const std::string cmd = std::string(PBMARL_CLI) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static nlohmann::json rps_config() {
    return {{"seed", 1},
            {"game", {{"name", "rock_paper_scissors"}}},
            {"algorithm", {{"bootstrap", "first_action"}, {"max_iterations", 10}}},
            {"meta_solver", {{"name", "zero_sum_lp"}}},
            {"simulation", {{"mode", "exact"}}},
            {"runtime", {{"executor", "inline"}, {"num_actors", 1}}}};
  }

  fs::path dir_;
};

TEST_F(CliTest, RunWritesAllArtifacts) {
  const fs::path cfg = write_config("rps.json", rps_config());
  const fs::path out = dir_ / "run";
  ASSERT_EQ(cli("run " + cfg.string() + " --out " + out.string()), 0) << slurp(dir_ / "stderr.txt");
  const auto metrics = read_metrics((out / "metrics.jsonl").string());
  EXPECT_GE(metrics.size(), 1u);
  const nlohmann::json summary = nlohmann::json::parse(slurp(out / "summary.json"));
  EXPECT_EQ(summary["stop_reason"], "converged");
  EXPECT_EQ(summary["iterations"], metrics.back()["iteration"]);
  const nlohmann::json resolved = nlohmann::json::parse(slurp(out / "config.resolved.json"));
  EXPECT_EQ(ExperimentConfig::from_json(resolved).to_json(), resolved);
  EXPECT_TRUE(fs::exists(out / "payoff_table.tsv"));
  EXPECT_FALSE(fs::exists(out / ".lock"));
  EXPECT_FALSE(fs::exists(out / "summary.json.tmp"));
}

TEST_F(CliTest, SeedOverrideIsReproducible) {
  nlohmann::json j = rps_config();
  j["game"] = {{"name", "kuhn_poker"}};
  j["oracle"] = {{"name", "q_learning"}, {"q_learning", {{"episodes", 300}}}};
  j["simulation"] = {{"mode", "monte_carlo"}, {"episodes", 100}};
  j["meta_solver"] = {{"name", "fictitious_play"}};
  j["algorithm"]["max_iterations"] = 2;
  const fs::path cfg = write_config("kuhn.json", j);
  for (const char* run : {"a", "b"}) {
    ASSERT_EQ(cli("run " + cfg.string() + " --set seed=7 --out " + (dir_ / run).string()), 2)
        << slurp(dir_ / "stderr.txt");
  }
  const std::string a = slurp(dir_ / "a" / "metrics.jsonl");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir_ / "b" / "metrics.jsonl"));
  EXPECT_EQ(nlohmann::json::parse(slurp(dir_ / "a" / "config.resolved.json"))["seed"], 7);
}

TEST_F(CliTest, InvalidConfigWritesNothing) {
  nlohmann::json j = rps_config();
  j["runtime"]["num_actors"] = 0;
  const fs::path cfg = write_config("bad.json", j);
  const fs::path out = dir_ / "never";
  EXPECT_EQ(cli("run " + cfg.string() + " --out " + out.string()), 3);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(cli("validate " + cfg.string()), 3);
  EXPECT_EQ(cli("validate " + cfg.string() + " --set runtime.num_actors=2"), 0);
  EXPECT_EQ(cli("validate " + (dir_ / "missing.json").string()), 3);
  EXPECT_EQ(cli("frobnicate"), 3);
}

TEST_F(CliTest, LockedDirectoryIsRefused) {
  const fs::path cfg = write_config("rps.json", rps_config());
  const fs::path out = dir_ / "busy";
  fs::create_directories(out);
  std::ofstream(out / ".lock") << "12345\n";
  EXPECT_EQ(cli("run " + cfg.string() + " --out " + out.string()), 4);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("in use"), std::string::npos);
  EXPECT_FALSE(fs::exists(out / "metrics.jsonl"));
}

TEST_F(CliTest, DumpPayoffs) {
  nlohmann::json j = rps_config();
  j["algorithm"]["max_iterations"] = 1;
  j["algorithm"]["check_convergence"] = false;
  const fs::path cfg = write_config("rps.json", j);
  const fs::path out = dir_ / "run";
  ASSERT_EQ(cli("run " + cfg.string() + " --out " + out.string()), 2);
  ASSERT_EQ(cli("dump-payoffs " + out.string()), 0);
  const std::string dumped = slurp(dir_ / "stdout.txt");
  EXPECT_EQ(dumped, slurp(out / "payoff_table.tsv"));
  int data_rows = 0;
  std::istringstream lines(dumped);
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty() && line[0] != '#') ++data_rows;
  }
  EXPECT_EQ(data_rows, 4 + 1);  // header line plus the 2x2 entries
  ASSERT_EQ(cli("dump-payoffs " + out.string() + " --out " + (dir_ / "again.tsv").string()), 0);
  EXPECT_EQ(slurp(dir_ / "again.tsv"), dumped);
  EXPECT_EQ(cli("dump-payoffs " + (dir_ / "nothing").string()), 4);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find((dir_ / "nothing" / "payoff_table.tsv").string()),
            std::string::npos);
}

TEST_F(CliTest, Bench) {
  nlohmann::json j = {{"game", {{"name", "synthetic"}, {"episode_length", 5}}},
                      {"bench", {{"worker_counts", {1}}, {"window_s", 0.2}}}};
  const fs::path cfg = write_config("bench.json", j);
  ASSERT_EQ(cli("bench " + cfg.string() + " --out " + (dir_ / "b").string()), 0);
  std::istringstream table(slurp(dir_ / "b" / "bench.tsv"));
  std::string header, row;
  std::getline(table, header);
  std::getline(table, row);
  EXPECT_EQ(header.substr(0, 10), "num_actors");
  std::istringstream fields(row);
  int actors = 0;
  long steps = 0, episodes = 0;
  double seconds = 0.0, sps = 0.0;
  fields >> actors >> steps >> episodes >> seconds >> sps;
  EXPECT_EQ(actors, 1);
  EXPECT_GT(sps, 0.0);
  j["bench"]["window_s"] = 0;
  write_config("bench.json", j);
  EXPECT_EQ(cli("bench " + cfg.string() + " --out " + (dir_ / "c").string()), 3);
}

}  // namespace
}  // namespace pbmarl
