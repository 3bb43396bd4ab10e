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

#include "pbmarl/metagame/payoff_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace pbmarl {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

// All tuples of `shape` in lexicographic order, calling f(index).
template <typename F>
void for_each_index(const std::vector<int>& shape, F&& f) {
  for (int s : shape) {
    if (s == 0) return;
  }
  ProfileIndex idx(shape.size(), 0);
  while (true) {
    f(idx);
    int k = static_cast<int>(shape.size()) - 1;
    while (k >= 0 && ++idx[k] == shape[k]) idx[k--] = 0;
    if (k < 0) return;
  }
}

}  // namespace

PayoffTable::PayoffTable(int num_agents) : axes_(num_agents) {
  if (num_agents < 1) throw InvalidArgument("payoff table needs at least one agent");
}

std::vector<int> PayoffTable::shape() const {
  std::vector<int> s;
  for (const auto& axis : axes_) s.push_back(static_cast<int>(axis.size()));
  return s;
}

void PayoffTable::check_index(const ProfileIndex& index) const {
  if (index.size() != axes_.size()) throw InvalidArgument("profile index has wrong rank");
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (index[a] < 0 || index[a] >= static_cast<int>(axes_[a].size())) {
      throw InvalidArgument("profile index out of range on axis " + std::to_string(a));
    }
  }
}

std::vector<SimulationTask> PayoffTable::expand_axes(int agent, const PolicyPool& pool,
                                                     int num_episodes, SimulationMode mode) {
  if (agent < 0 || agent >= num_agents()) throw InvalidArgument("unknown agent");
  if (pool.size() != axes_[agent].size() + 1) {
    throw InvalidArgument("pool of " + agent_name(agent) + " has " +
                          std::to_string(pool.size()) + " policies but the table axis has " +
                          std::to_string(axes_[agent].size()) +
                          "; expand once per appended policy");
  }
  if (mode == SimulationMode::kMonteCarlo && num_episodes < 1) {
    throw InvalidArgument("monte-carlo simulation needs at least one episode");
  }
  axes_[agent].push_back(pool.ids().back());
  std::vector<int> others = shape();
  others[agent] = 1;
  std::vector<SimulationTask> tasks;
  const int new_index = static_cast<int>(axes_[agent].size()) - 1;
  for_each_index(others, [&](ProfileIndex idx) {
    idx[agent] = new_index;
    cells_[idx] = Cell{};
    tasks.push_back({combination_of(idx), idx, num_episodes, mode});
  });
  return tasks;
}

std::vector<SimulationTask> PayoffTable::refresh(int num_episodes, SimulationMode mode) {
  std::vector<SimulationTask> tasks;
  for (auto& [idx, cell] : cells_) {
    if (cell.status != EntryStatus::kFilled) continue;
    cell.status = EntryStatus::kPending;
    tasks.push_back({combination_of(idx), idx, num_episodes, mode});
  }
  return tasks;
}

void PayoffTable::record_simulation(const ProfileIndex& index, const std::vector<double>& means,
                                    std::int64_t episodes) {
  check_index(index);
  const auto it = cells_.find(index);
  if (it == cells_.end()) throw InvalidArgument("recording a combination that was never scheduled");
  if (static_cast<int>(means.size()) != num_agents()) {
    throw InvalidArgument("payoff vector has " + std::to_string(means.size()) +
                          " entries for " + std::to_string(num_agents()) + " agents");
  }
  for (double m : means) {
    if (!std::isfinite(m)) throw InvalidArgument("non-finite payoff");
  }
  if (episodes < 1) throw InvalidArgument("a simulation result needs at least one episode");
  Cell& cell = it->second;
  cell.parts.emplace_back(means, episodes);
  std::sort(cell.parts.begin(), cell.parts.end());
  std::int64_t total = 0;
  std::vector<double> sums(means.size(), 0.0);
  for (const auto& [m, n] : cell.parts) {
    total += n;
    for (std::size_t a = 0; a < m.size(); ++a) sums[a] += m[a] * static_cast<double>(n);
  }
  for (double& s : sums) s /= static_cast<double>(total);
  cell.merged = {std::move(sums), total};
  cell.status = EntryStatus::kFilled;
}

EntryStatus PayoffTable::status(const ProfileIndex& index) const {
  const auto it = cells_.find(index);
  return it == cells_.end() ? EntryStatus::kAbsent : it->second.status;
}

const PayoffEntry& PayoffTable::entry(const ProfileIndex& index) const {
  const auto it = cells_.find(index);
  if (it == cells_.end() || it->second.parts.empty()) {
    throw InvalidArgument("payoff entry has no recorded simulation");
  }
  return it->second.merged;
}

ProfileIndex PayoffTable::index_of(const PolicyCombination& combination) const {
  if (combination.policy_ids.size() != axes_.size()) {
    throw InvalidArgument("combination has wrong number of agents");
  }
  ProfileIndex idx;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const auto& axis = axes_[a];
    const auto it = std::find(axis.begin(), axis.end(), combination.policy_ids[a]);
    if (it == axis.end()) throw NotFound("policy " + combination.policy_ids[a] + " is not on the table axis");
    idx.push_back(static_cast<int>(it - axis.begin()));
  }
  return idx;
}

PolicyCombination PayoffTable::combination_of(const ProfileIndex& index) const {
  check_index(index);
  PolicyCombination c;
  for (std::size_t a = 0; a < axes_.size(); ++a) c.policy_ids.push_back(axes_[a][index[a]]);
  return c;
}

std::vector<ProfileIndex> PayoffTable::pending() const {
  std::vector<ProfileIndex> out;
  for (const auto& [idx, cell] : cells_) {
    if (cell.status == EntryStatus::kPending) out.push_back(idx);
  }
  return out;
}

bool PayoffTable::complete() const {
  bool ok = true;
  for_each_index(shape(), [&](const ProfileIndex& idx) {
    if (status(idx) != EntryStatus::kFilled) ok = false;
  });
  for (const auto& axis : axes_) {
    if (axis.empty()) ok = false;
  }
  return ok;
}

MetaGame PayoffTable::meta_game() const {
  if (!complete()) throw InvalidArgument("payoff table has unfilled entries");
  MetaGame g;
  g.shape = shape();
  const Eigen::Index n = g.num_profiles();
  g.payoffs.assign(num_agents(), Eigen::VectorXd(n));
  for (Eigen::Index flat = 0; flat < n; ++flat) {
    const PayoffEntry& e = entry(g.profile_of(flat));
    for (int a = 0; a < num_agents(); ++a) g.payoffs[a][flat] = e.means[a];
  }
  return g;
}

std::string PayoffTable::dump() const {
  std::string out = "# pbmarl payoff table\n";
  out += "# agents\t" + std::to_string(num_agents()) + "\n";
  for (int a = 0; a < num_agents(); ++a) {
    out += "# axis\t" + std::to_string(a);
    for (const PolicyId& id : axes_[a]) out += "\t" + id;
    out += "\n";
  }
  for (int a = 0; a < num_agents(); ++a) out += "idx_" + std::to_string(a) + "\t";
  for (int a = 0; a < num_agents(); ++a) out += "mean_" + std::to_string(a) + "\t";
  out += "episodes\tstatus\n";
  for (const auto& [idx, cell] : cells_) {
    for (int i : idx) out += std::to_string(i) + "\t";
    if (cell.parts.empty()) {
      for (int a = 0; a < num_agents(); ++a) out += "-\t";
      out += "0\t";
    } else {
      for (double m : cell.merged.means) out += format_double(m) + "\t";
      out += std::to_string(cell.merged.episodes) + "\t";
    }
    out += cell.status == EntryStatus::kFilled ? "filled\n" : "pending\n";
  }
  return out;
}

PayoffTable PayoffTable::parse_dump(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "# pbmarl payoff table") {
    throw InvalidArgument("not a payoff table dump");
  }
  if (!std::getline(in, line)) throw InvalidArgument("payoff dump: missing agent count");
  auto fields = split(line, '\t');
  if (fields.size() != 2 || fields[0] != "# agents") {
    throw InvalidArgument("payoff dump: bad agent line");
  }
  const int n = std::stoi(fields[1]);
  PayoffTable table(n);
  for (int a = 0; a < n; ++a) {
    if (!std::getline(in, line)) throw InvalidArgument("payoff dump: missing axis line");
    fields = split(line, '\t');
    if (fields.size() < 2 || fields[0] != "# axis" || std::stoi(fields[1]) != a) {
      throw InvalidArgument("payoff dump: bad axis line");
    }
    table.axes_[a].assign(fields.begin() + 2, fields.end());
  }
  std::getline(in, line);  // column header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    fields = split(line, '\t');
    if (static_cast<int>(fields.size()) != 2 * n + 2) {
      throw InvalidArgument("payoff dump: row has " + std::to_string(fields.size()) + " fields");
    }
    ProfileIndex idx;
    for (int a = 0; a < n; ++a) idx.push_back(std::stoi(fields[a]));
    table.check_index(idx);
    Cell& cell = table.cells_[idx];
    if (fields[n] != "-") {
      std::vector<double> means;
      for (int a = 0; a < n; ++a) means.push_back(std::stod(fields[n + a]));
      const std::int64_t episodes = std::stoll(fields[2 * n]);
      cell.parts.emplace_back(means, episodes);
      cell.merged = {means, episodes};
    }
    cell.status = fields[2 * n + 1] == "filled" ? EntryStatus::kFilled : EntryStatus::kPending;
  }
  return table;
}

StrategyProfile to_profile(const MetaStrategy& meta, const PayoffTable& table) {
  if (static_cast<int>(meta.agents.size()) != table.num_agents()) {
    throw InvalidArgument("meta-strategy has the wrong number of agents");
  }
  StrategyProfile profile;
  for (int a = 0; a < table.num_agents(); ++a) {
    const auto& axis = table.axis(a);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(axis.size()));
    const AgentDistribution& d = meta.agents[a];
    for (std::size_t i = 0; i < d.policy_ids.size(); ++i) {
      const auto it = std::find(axis.begin(), axis.end(), d.policy_ids[i]);
      if (it == axis.end()) {
        if (d.probs[i] > 0.0) throw InvalidArgument(d.policy_ids[i] + " is not on the table axis");
        continue;
      }
      v[it - axis.begin()] += d.probs[i];
    }
    profile.push_back(std::move(v));
  }
  return profile;
}

MetaStrategy to_meta_strategy(const StrategyProfile& profile, const PayoffTable& table) {
  MetaStrategy meta;
  for (int a = 0; a < table.num_agents(); ++a) {
    AgentDistribution d{table.axis(a), {}};
    for (Eigen::Index i = 0; i < profile[a].size(); ++i) d.probs.push_back(profile[a][i]);
    meta.agents.push_back(std::move(d));
  }
  return meta;
}

MetaStrategy solve_meta(const PayoffTable& table, const MetaSolverConfig& solver) {
  for (int a = 0; a < table.num_agents(); ++a) {
    if (table.axis(a).empty()) {
      throw InvalidArgument("meta-solver on an empty pool for " + agent_name(a));
    }
  }
  if (!table.complete()) throw InvalidArgument("payoff table has unfilled entries");
  if (solver.name == "uniform") return to_meta_strategy(uniform_profile(table.shape()), table);
  if (solver.name == "fictitious_play") {
    return to_meta_strategy(fictitious_play(table.meta_game(), solver.fictitious_play_iterations),
                            table);
  }
  if (solver.name == "zero_sum_lp") {
    return to_meta_strategy(zero_sum_nash(table.meta_game()), table);
  }
  if (solver.name == "alpha_rank") {
    return to_meta_strategy(alpha_rank(table.meta_game(), solver.alpha_rank).marginals, table);
  }
  throw NotFound("unknown meta-solver \"" + solver.name + "\"");
}

std::vector<double> aggregate(const PayoffTable& table, const MetaStrategy& equilibrium,
                              const std::map<int, PolicyId>& brs) {
  const StrategyProfile base = to_profile(equilibrium, table);
  const int n = table.num_agents();
  auto value_under = [&](const StrategyProfile& profile, int agent) {
    double total = 0.0;
    for_each_index(table.shape(), [&](const ProfileIndex& idx) {
      double w = 1.0;
      for (int a = 0; a < n && w != 0.0; ++a) w *= profile[a][idx[a]];
      if (w == 0.0) return;
      if (table.status(idx) != EntryStatus::kFilled) {
        throw InvalidArgument("aggregate needs an unfilled combination");
      }
      total += w * table.entry(idx).means[agent];
    });
    return total;
  };
  std::vector<double> out(n);
  for (int a = 0; a < n; ++a) {
    const auto it = brs.find(a);
    if (it == brs.end()) {
      out[a] = value_under(base, a);
      continue;
    }
    StrategyProfile profile = base;
    const auto& axis = table.axis(a);
    const auto pos = std::find(axis.begin(), axis.end(), it->second);
    if (pos == axis.end()) throw InvalidArgument(it->second + " is not on the table axis");
    profile[a].setZero();
    profile[a][pos - axis.begin()] = 1.0;
    out[a] = value_under(profile, a);
  }
  return out;
}

}  // namespace pbmarl
