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

#include "pbmarl/metagame/meta_solvers.hpp"

#include <Eigen/SparseLU>
#include <cmath>

#include "pbmarl/common.hpp"

namespace pbmarl {
namespace {

Eigen::Index argmax_lowest(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

void check_shape(const MetaGame& game) {
  if (game.num_players() < 1) throw InvalidArgument("meta-game has no players");
  for (int s : game.shape) {
    if (s < 1) throw InvalidArgument("meta-game has an empty population");
  }
  for (const Eigen::VectorXd& p : game.payoffs) {
    if (p.size() != game.num_profiles()) throw InvalidArgument("meta-game payoff size mismatch");
  }
}

}  // namespace

StrategyProfile uniform_profile(const std::vector<int>& shape) {
  StrategyProfile out;
  for (int s : shape) {
    if (s < 1) throw InvalidArgument("uniform strategy over an empty population");
    out.push_back(Eigen::VectorXd::Constant(s, 1.0 / s));
  }
  return out;
}

StrategyProfile zero_sum_nash(const MetaGame& game, double tolerance) {
  check_shape(game);
  if (game.num_players() != 2) throw InvalidArgument("zero-sum solver needs two players");
  const Eigen::MatrixXd a = game.matrix(0);
  if ((a + game.matrix(1)).cwiseAbs().maxCoeff() > tolerance) {
    throw InvalidArgument("zero-sum solver on a game that is not zero-sum");
  }
  // Shift payoffs positive; the column player then solves
  //   max 1'q  s.t.  M q <= 1, q >= 0
  // and the row player's strategy is read off the slack reduced costs.
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  const double shift = 1.0 - a.minCoeff();
  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  tab.topLeftCorner(m, n) = a.array() + shift;
  tab.block(0, n, m, m) = Eigen::MatrixXd::Identity(m, m);
  tab.col(n + m).head(m).setOnes();
  tab.row(m).head(n).setConstant(-1.0);
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;
  constexpr double kEps = 1e-12;
  while (true) {
    // Bland's rule: lowest-index improving column, lowest-index tied row.
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (tab(m, j) < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double best = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab(i, enter) <= kEps) continue;
      const double ratio = tab(i, n + m) / tab(i, enter);
      if (leave < 0 || ratio < best - kEps ||
          (ratio <= best + kEps && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw RuntimeFailure("zero-sum solver: unbounded program");
    tab.row(leave) /= tab(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && tab(i, enter) != 0.0) tab.row(i) -= tab(i, enter) * tab.row(leave);
    }
    basis[leave] = enter;
  }
  Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[i] < n) q[basis[i]] = tab(i, n + m);
  }
  Eigen::VectorXd p = tab.row(m).segment(n, m).transpose();
  StrategyProfile out = {p.cwiseMax(0.0), q.cwiseMax(0.0)};
  for (auto& x : out) x /= x.sum();
  return out;
}

StrategyProfile fictitious_play(const MetaGame& game, int iterations) {
  check_shape(game);
  if (iterations < 1) throw InvalidArgument("fictitious play needs at least one iteration");
  const int n = game.num_players();
  std::vector<Eigen::VectorXd> counts;
  for (int s : game.shape) counts.push_back(Eigen::VectorXd::Zero(s));

  if (n == 2) {
    // Running sums of the payoff columns/rows played against, so each
    // iteration costs O(|S_0| + |S_1|).
    const Eigen::MatrixXd a = game.matrix(0);
    const Eigen::MatrixXd b = game.matrix(1);
    Eigen::VectorXd v0 = a.rowwise().mean();
    Eigen::VectorXd v1 = b.colwise().mean().transpose();
    for (int t = 0; t < iterations; ++t) {
      const Eigen::Index i = argmax_lowest(v0);
      const Eigen::Index j = argmax_lowest(v1);
      counts[0][i] += 1.0;
      counts[1][j] += 1.0;
      if (t == 0) {
        v0 = a.col(j);
        v1 = b.row(i).transpose();
      } else {
        v0 += a.col(j);
        v1 += b.row(i).transpose();
      }
    }
  } else {
    StrategyProfile belief = uniform_profile(game.shape);
    for (int t = 0; t < iterations; ++t) {
      std::vector<Eigen::Index> picks(n);
      for (int p = 0; p < n; ++p) picks[p] = argmax_lowest(action_values(game, p, belief));
      for (int p = 0; p < n; ++p) {
        counts[p][picks[p]] += 1.0;
        belief[p] = counts[p] / static_cast<double>(t + 1);
      }
    }
  }
  for (auto& c : counts) c /= static_cast<double>(iterations);
  return counts;
}

AlphaRankResult alpha_rank(const MetaGame& game, const AlphaRankConfig& config) {
  check_shape(game);
  if (config.population_size < 1 || !(config.perturbation > 0.0 && config.perturbation < 1.0)) {
    throw InvalidArgument("alpha_rank: population_size >= 1 and perturbation in (0, 1) required");
  }
  const int n = game.num_players();
  const Eigen::Index num_profiles = game.num_profiles();
  int deviations = 0;
  for (int s : game.shape) deviations += s - 1;

  AlphaRankResult result;
  if (deviations == 0) {
    result.stationary = Eigen::VectorXd::Ones(1);
    result.transition.resize(1, 1);
    result.transition.insert(0, 0) = 1.0;
    result.marginals = uniform_profile(game.shape);
    return result;
  }

  const double eta = 1.0 / deviations;
  const double neutral = 1.0 / config.population_size;
  const double eps = config.perturbation;
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(num_profiles) * (deviations + 1));
  for (Eigen::Index flat = 0; flat < num_profiles; ++flat) {
    const std::vector<int> s = game.profile_of(flat);
    double leave = 0.0;
    for (int k = 0; k < n; ++k) {
      const double current = game.payoffs[k][flat];
      std::vector<int> t = s;
      for (int sigma = 0; sigma < game.shape[k]; ++sigma) {
        if (sigma == s[k]) continue;
        t[k] = sigma;
        const Eigen::Index target = game.flat_index(t);
        const double gain = game.payoffs[k][target] - current;
        const double tie = 1e-12 * (1.0 + std::abs(current));
        double rho = gain > tie ? 1.0 : (gain < -tie ? 0.0 : neutral);
        rho = (1.0 - eps) * rho + eps;
        const double p = eta * rho;
        entries.emplace_back(flat, target, p);
        leave += p;
      }
    }
    entries.emplace_back(flat, flat, 1.0 - leave);
  }
  result.transition.resize(num_profiles, num_profiles);
  result.transition.setFromTriplets(entries.begin(), entries.end());
  result.transition.makeCompressed();

  // Solve (T^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  Eigen::SparseMatrix<double> system = Eigen::SparseMatrix<double>(result.transition.transpose());
  for (Eigen::Index i = 0; i < num_profiles; ++i) system.coeffRef(i, i) -= 1.0;
  std::vector<Eigen::Triplet<double>> rows;
  for (int col = 0; col < system.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(system, col); it; ++it) {
      if (it.row() != num_profiles - 1) rows.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (Eigen::Index j = 0; j < num_profiles; ++j) rows.emplace_back(num_profiles - 1, j, 1.0);
  Eigen::SparseMatrix<double> a(num_profiles, num_profiles);
  a.setFromTriplets(rows.begin(), rows.end());
  a.makeCompressed();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(num_profiles);
  rhs[num_profiles - 1] = 1.0;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw RuntimeFailure("alpha_rank: factorization failed");
  Eigen::VectorXd pi = lu.solve(rhs);
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();

  // Polish with power iterations until the residual target is met.
  auto residual = [&](const Eigen::VectorXd& v) {
    return (Eigen::VectorXd(result.transition.transpose() * v) - v).cwiseAbs().maxCoeff();
  };
  double r = residual(pi);
  for (int it = 0; it < 10000 && r > config.tolerance; ++it) {
    pi = result.transition.transpose() * pi;
    pi /= pi.sum();
    r = residual(pi);
  }
  result.residual = r;
  result.stationary = pi;

  for (int k = 0; k < n; ++k) result.marginals.push_back(Eigen::VectorXd::Zero(game.shape[k]));
  for (Eigen::Index flat = 0; flat < num_profiles; ++flat) {
    const std::vector<int> s = game.profile_of(flat);
    for (int k = 0; k < n; ++k) result.marginals[k][s[k]] += pi[flat];
  }
  return result;
}

}  // namespace pbmarl
