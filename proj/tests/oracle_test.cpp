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


#include <cmath>
#include <memory>

#include "gtest/gtest.h"
#include "pbmarl/game/expectation.hpp"
#include "pbmarl/game/games.hpp"
#include "pbmarl/oracle/best_response.hpp"
#include "pbmarl/oracle/q_learning.hpp"
#include "pbmarl/runtime/rollout.hpp"

namespace pbmarl {
namespace {

// Two-agent harness: agent 0 trains against a fixed opponent pool of agent 1.
class TrainingHarness : public DataSource {
 public:
  TrainingHarness(std::shared_ptr<const Game> game, TabularPolicy opponent, std::uint64_t seed)
      : game_(std::move(game)), dataset_(100000), rollout_(game_, 4, &params_, &dataset_),
        rng_(seed), seed_(seed) {
    PolicyPool learner(0);
    learner.extend(TabularPolicy("agent_0/policy_0"));
    params_.push("agent_0/policy_0", serialize_parameters(*learner.at(0)), 1);
    PolicyPool other(1);
    opponent.set_id("agent_1/policy_0");
    other.extend(std::move(opponent));
    other.freeze("agent_1/policy_0");
    pools_ = std::make_shared<const std::vector<PolicyPool>>(
        std::vector<PolicyPool>{learner, other});
    meta_ = uniform_meta_strategy(*pools_);
  }

  void advance(int episodes) override {
    RolloutRequest request;
    request.meta = meta_;
    request.overrides = {{0, "agent_0/policy_0"}};
    request.collect_agents = {0};
    request.num_episodes = episodes;
    request.seed = derive_seed(seed_, "rollout/" + std::to_string(chunk_++));
    rollout_.rollout(request, pools_);
  }

  SampleBatch sample(int n) override { return dataset_.sample(0, n, rng_); }

  OracleTask task(QLearningConfig rl) const {
    OracleTask t;
    t.agent = 0;
    t.policy_id = "agent_0/policy_0";
    t.opponent_meta = meta_;
    t.rl = rl;
    return t;
  }

  ParameterServer& params() { return params_; }
  const Game& game() const { return *game_; }
  const TabularPolicy& opponent() const { return *pools_->at(1).at(0); }

 private:
  std::shared_ptr<const Game> game_;
  ParameterServer params_;
  DatasetServer dataset_;
  RolloutWorker rollout_;
  PoolSnapshot pools_;
  MetaStrategy meta_;
  Rng rng_;
  std::uint64_t seed_;
  int chunk_ = 0;
};

double value_against(const Game& game, const TabularPolicy& learner, const TabularPolicy& other) {
  const BehaviorPolicy* joint[] = {&learner, &other};
  return expected_returns(game, pure_joint(joint))[0];
}

TabularPolicy constant_policy(const std::string& key, std::vector<double> probs) {
  TabularPolicy p("fixed", false);
  p.set(key, std::move(probs));
  return p;
}

TEST(ExactBestResponseTest, RpsAgainstRockIsPaper) {
  auto game = make_matrix_game(rock_paper_scissors());
  const TabularPolicy rock = constant_policy("1|||", {1.0, 0.0, 0.0});
  const TabularPolicy uniform("u");
  const BehaviorPolicy* joint[] = {&uniform, &rock};
  const BestResponse br = exact_best_response(*game, 0, pure_joint(joint));
  EXPECT_DOUBLE_EQ(br.value, 1.0);
  const Action legal[] = {0, 1, 2};
  EXPECT_EQ(br.policy.action_probabilities("0|||", legal), (std::vector<double>{0.0, 1.0, 0.0}));
}

TEST(ExactBestResponseTest, IndifferenceBreaksTowardFirstAction) {
  auto game = make_matrix_game(matching_pennies());
  const TabularPolicy uniform("u");
  const BehaviorPolicy* joint[] = {&uniform, &uniform};
  const BestResponse br = exact_best_response(*game, 0, pure_joint(joint));
  EXPECT_NEAR(br.value, 0.0, 1e-12);
  const Action legal[] = {0, 1};
  EXPECT_EQ(br.policy.action_probabilities("0|||", legal), (std::vector<double>{1.0, 0.0}));
}

TEST(ExactBestResponseTest, KuhnUniformBeatsGameValue) {
  auto game = make_kuhn_poker();
  const TabularPolicy uniform("u");
  const BehaviorPolicy* joint[] = {&uniform, &uniform};
  const BestResponse br0 = exact_best_response(*game, 0, pure_joint(joint));
  const BestResponse br1 = exact_best_response(*game, 1, pure_joint(joint));
  // Game value for the first player is -1/18.
  EXPECT_GT(br0.value, -1.0 / 18.0);
  EXPECT_GT(br1.value, 1.0 / 18.0);
  EXPECT_NEAR(br0.value, 0.5, 1e-12);
  EXPECT_NEAR(br1.value, 5.0 / 12.0, 1e-12);
  EXPECT_EQ(br0.policy.size(), 6u);
  // Deterministic and self-consistent.
  const BestResponse again = exact_best_response(*game, 0, pure_joint(joint));
  EXPECT_TRUE(br0.policy.same_parameters(again.policy));
  EXPECT_NEAR(value_against(*game, br0.policy, uniform), br0.value, 1e-12);
}

TEST(ExactBestResponseTest, MixtureEqualsReachWeightedAverage) {
  auto game = make_kuhn_poker();
  const TabularPolicy a = first_action_policy(*game, 1, "a");
  const TabularPolicy b("b");
  const TabularPolicy learner("l");
  JointPolicy joint(2);
  joint[0] = {{1.0, &learner}};
  joint[1] = {{0.3, &a}, {0.7, &b}};
  const BestResponse br = exact_best_response(*game, 0, joint);
  // The best response can do no worse than any fixed policy, in particular
  // the separate best responses evaluated against the mixture.
  for (const TabularPolicy* single : {&a, &b}) {
    const BehaviorPolicy* pure[] = {&learner, single};
    const BestResponse other = exact_best_response(*game, 0, pure_joint(pure));
    const double against_mix = 0.3 * value_against(*game, other.policy, a) +
                               0.7 * value_against(*game, other.policy, b);
    EXPECT_GE(br.value + 1e-9, against_mix);
  }
  const double check = 0.3 * value_against(*game, br.policy, a) +
                       0.7 * value_against(*game, br.policy, b);
  EXPECT_NEAR(check, br.value, 1e-12);
}

TEST(QLearningTrainerTest, EmptyBatchRejected) {
  QLearningTrainer trainer(0, {});
  EXPECT_THROW(trainer.optimize(SampleBatch{}), InvalidArgument);
}

TEST(QLearningTrainerTest, HandComputedTdError) {
  QLearningConfig rl;
  rl.learning_rate = 0.5;
  rl.discount = 1.0;
  QLearningTrainer trainer(0, rl);
  SampleBatch batch;
  // s -a0-> s' (reward 0), then s' -a1-> terminal with reward 2.
  batch.push_back({"0|s||", 0, 0.0, "0|t||", false, 0, 0, 2, 2});
  batch.push_back({"0|t||", 1, 2.0, "", true, 0, 0, 2, 0});
  const Statistics stats = trainer.optimize(batch);
  // Row 1: delta = 0 + max Q(t) - Q(s,0) = 0. Row 2: delta = 2 - 0 = 2,
  // after which Q(t,1) = 1.
  EXPECT_DOUBLE_EQ(stats.at("td_error"), 1.0);
  EXPECT_DOUBLE_EQ(stats.at("loss"), 2.0);
  EXPECT_DOUBLE_EQ((*trainer.q_values("0|t||"))[1], 1.0);
  const Statistics second = trainer.optimize(batch);
  // Row 1: delta = 0 + 1 - 0 = 1. Row 2: delta = 2 - 1 = 1.
  EXPECT_DOUBLE_EQ(second.at("td_error"), 1.0);
  EXPECT_DOUBLE_EQ((*trainer.q_values("0|s||"))[0], 0.5);
}

TEST(QLearningTrainerTest, ZeroRewardFixedPointShrinksMonotonically) {
  QLearningConfig rl;
  rl.learning_rate = 0.3;
  QLearningTrainer trainer(0, rl);
  SampleBatch seed;
  seed.push_back({"0|a||", 0, 5.0, "", true, 0, 0, 1, 0});
  trainer.optimize(seed);
  SampleBatch batch;
  for (int i = 0; i < 4; ++i) batch.push_back({"0|a||", 0, 0.0, "", true, 0, 0, 1, 0});
  double previous = std::abs((*trainer.q_values("0|a||"))[0]);
  for (int k = 0; k < 20; ++k) {
    trainer.optimize(batch);
    const double now = std::abs((*trainer.q_values("0|a||"))[0]);
    EXPECT_LT(now, previous);
    previous = now;
  }
  EXPECT_LT(previous, 1e-6);
}

TEST(QLearningTrainerTest, RejectsForeignRows) {
  QLearningTrainer trainer(0, {});
  SampleBatch batch;
  batch.push_back({"1|x||", 0, 0.0, "", true, 1, 0, 2, 0});
  EXPECT_THROW(trainer.optimize(batch), InvalidArgument);
  SampleBatch mislabeled;
  mislabeled.push_back({"x", 0, 0.0, "", true, 0, 0, 2, 0});
  EXPECT_THROW(trainer.optimize(mislabeled), InvalidArgument);
}

TEST(QLearningOracleTest, BanditPicksBetterArm) {
  MatrixGameDefinition def;
  def.shape = {2, 1};
  def.payoffs = {{0.0, 1.0}, {0.0, -1.0}};
  TrainingHarness h(make_matrix_game(def), TabularPolicy("o", false), 11);
  QLearningConfig rl;
  rl.episodes = 500;
  const TabularPolicy p = q_learning_oracle(h.task(rl), h, h.params());
  const Action legal[] = {0, 1};
  EXPECT_EQ(p.action_probabilities("0|||", legal), (std::vector<double>{0.0, 1.0}));
}

TEST(QLearningOracleTest, RpsAgainstRock) {
  TrainingHarness h(make_matrix_game(rock_paper_scissors()),
                    constant_policy("1|||", {1.0, 0.0, 0.0}), 12);
  QLearningConfig rl;
  rl.episodes = 5000;
  rl.epsilon_start = 0.1;
  rl.epsilon_end = 0.01;
  const TabularPolicy p = q_learning_oracle(h.task(rl), h, h.params());
  const Action legal[] = {0, 1, 2};
  EXPECT_EQ(p.action_probabilities("0|||", legal), (std::vector<double>{0.0, 1.0, 0.0}));
  EXPECT_GE(value_against(h.game(), p, h.opponent()), 0.95);
  // Behaviour policies were published with increasing versions.
  EXPECT_GT(h.params().version("agent_0/policy_0"), 1u);
}

TEST(QLearningOracleTest, KuhnApproachesExactBestResponse) {
  TrainingHarness h(make_kuhn_poker(), TabularPolicy("o", false), 13);
  QLearningConfig rl;
  rl.episodes = 50000;
  const TabularPolicy p = q_learning_oracle(h.task(rl), h, h.params());
  const TabularPolicy learner("l");
  const BehaviorPolicy* joint[] = {&learner, &h.opponent()};
  const BestResponse br = exact_best_response(h.game(), 0, pure_joint(joint));
  const double achieved = value_against(h.game(), p, h.opponent());
  EXPECT_LE(achieved, br.value + 1e-9);
  EXPECT_GE(achieved, br.value - 0.05);
}

TEST(QLearningOracleTest, QValuesStayWithinReturnRange) {
  TrainingHarness h(make_kuhn_poker(), TabularPolicy("o", false), 14);
  QLearningConfig rl;
  rl.episodes = 2000;
  QLearningOracle oracle(h.task(rl));
  for (int e = 0; e < rl.num_epochs(); ++e) {
    h.advance(rl.episodes_per_epoch);
    oracle.train(h, h.params(), rl.updates_per_epoch);
  }
  ASSERT_GT(oracle.trainer().num_states(), 0u);
  const TabularPolicy greedy = oracle.result();
  for (const auto& [key, probs] : greedy.table()) {
    for (double q : *oracle.trainer().q_values(key)) {
      EXPECT_GE(q, -2.0 - 1e-9);
      EXPECT_LE(q, 2.0 + 1e-9);
    }
  }
}

TEST(QLearningOracleTest, DeterministicUnderFixedSeed) {
  QLearningConfig rl;
  rl.episodes = 1000;
  TrainingHarness a(make_kuhn_poker(), TabularPolicy("o", false), 21);
  TrainingHarness b(make_kuhn_poker(), TabularPolicy("o", false), 21);
  const TabularPolicy pa = q_learning_oracle(a.task(rl), a, a.params());
  const TabularPolicy pb = q_learning_oracle(b.task(rl), b, b.params());
  EXPECT_TRUE(pa.same_parameters(pb));
}

TEST(QLearningOracleTest, StarvationAfterPatience) {
  class Empty : public DataSource {
   public:
    void advance(int) override {}
    SampleBatch sample(int) override { throw Starvation("empty"); }
  } empty;
  ParameterServer params;
  OracleTask task;
  task.policy_id = "p";
  task.rl.starvation_patience = 2;
  QLearningOracle oracle(task);
  EXPECT_THROW(oracle.train(empty, params, 1), Starvation);
}

}  // namespace
}  // namespace pbmarl
