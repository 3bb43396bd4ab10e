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
#include <map>

#include "gtest/gtest.h"
#include "pbmarl/game/games.hpp"
#include "pbmarl/oracle/best_response.hpp"
#include "pbmarl/policy/population.hpp"
#include "pbmarl/policy/tabular_policy.hpp"

namespace pbmarl {
namespace {

TEST(TabularPolicyTest, UniformFallbackAndValidation) {
  TabularPolicy p("p");
  const Action legal[] = {0, 2, 5};
  const auto probs = p.action_probabilities("0|x||", legal);
  ASSERT_EQ(probs.size(), 3u);
  for (double x : probs) EXPECT_DOUBLE_EQ(x, 1.0 / 3.0);
  EXPECT_THROW(p.set("k", {0.5, 0.6}), InvalidArgument);
  EXPECT_THROW(p.set("k", {1.5, -0.5}), InvalidArgument);
  EXPECT_THROW(p.set("k", {}), InvalidArgument);
  p.set("k", {0.25, 0.75});
  const Action two[] = {0, 1};
  EXPECT_EQ(p.action_probabilities("k", two), (std::vector<double>{0.25, 0.75}));
  EXPECT_THROW(p.action_probabilities("k", legal), InvalidArgument);
}

TEST(SerializationTest, RoundTripTwoEntries) {
  TabularPolicy p("agent_0/policy_1", true, 42);
  p.set("0|J||", {0.5, 0.5});
  p.set("0|Q||pb", {0.1, 0.9});
  const ParameterBlob blob = serialize_parameters(p);
  ASSERT_GE(blob.size(), 4u);
  EXPECT_EQ(std::string(blob.begin(), blob.begin() + 4), "PBTP");
  TabularPolicy q = deserialize_parameters(blob);
  EXPECT_TRUE(p.same_parameters(q));
  EXPECT_EQ(q.version(), 42u);
  EXPECT_FALSE(q.trainable());
}

TEST(SerializationTest, TruncationAndCorruptionRejected) {
  TabularPolicy p("x", true, 1);
  p.set("a", {1.0});
  p.set("b", {0.5, 0.5});
  ParameterBlob blob = serialize_parameters(p);
  for (std::size_t cut = 0; cut < blob.size(); ++cut) {
    std::span<const std::uint8_t> prefix(blob.data(), cut);
    EXPECT_THROW(deserialize_parameters(prefix), InvalidArgument) << cut;
  }
  ParameterBlob longer = blob;
  longer.push_back(0);
  EXPECT_THROW(deserialize_parameters(longer), InvalidArgument);
  ParameterBlob bad_magic = blob;
  bad_magic[0] = 'X';
  EXPECT_THROW(deserialize_parameters(bad_magic), InvalidArgument);
  ParameterBlob bad_version = blob;
  bad_version[4] = 9;
  EXPECT_THROW(deserialize_parameters(bad_version), InvalidArgument);
}

TEST(SerializationTest, KuhnBestResponseReserializesBitIdentically) {
  auto game = make_kuhn_poker();
  TabularPolicy uniform("u");
  JointPolicy opp = {{{1.0, &uniform}}, {{1.0, &uniform}}};
  BestResponse br0 = exact_best_response(*game, 0, opp, "br0");
  BestResponse br1 = exact_best_response(*game, 1, opp, "br1");
  TabularPolicy both("br");
  for (const auto& [k, v] : br0.policy.table()) both.set(k, v);
  for (const auto& [k, v] : br1.policy.table()) both.set(k, v);
  EXPECT_EQ(both.size(), 12u);
  const ParameterBlob once = serialize_parameters(both);
  const ParameterBlob twice = serialize_parameters(deserialize_parameters(once));
  EXPECT_EQ(once, twice);
  EXPECT_EQ(parameter_digest(both), parameter_digest(deserialize_parameters(once)));
}

TEST(PolicyPoolTest, ExtendPreservesOrder) {
  PolicyPool pool(0);
  EXPECT_EQ(pool.extend(TabularPolicy()), "agent_0/policy_0");
  EXPECT_EQ(pool.size(), 1u);
  pool.extend(TabularPolicy("b"));
  pool.extend(TabularPolicy("c"));
  pool.freeze("b");
  const std::uint64_t digest = parameter_digest(*pool.get("b"));
  EXPECT_EQ(pool.extend(TabularPolicy("br")), "br");
  EXPECT_EQ(pool.size(), 4u);
  EXPECT_EQ(pool.index_of("br"), 3u);
  EXPECT_EQ(pool.id_at(3), "br");
  EXPECT_THROW(pool.extend(TabularPolicy("c")), InvalidArgument);
  for (std::size_t i = 0; i < pool.size(); ++i) EXPECT_EQ(pool.index_of(pool.id_at(i)), i);
  EXPECT_TRUE(pool.is_frozen("b"));
  EXPECT_FALSE(pool.get("b")->trainable());
  EXPECT_THROW(pool.replace("b", TabularPolicy("b")), InvalidArgument);
  EXPECT_EQ(parameter_digest(*pool.get("b")), digest);
  EXPECT_THROW(pool.index_of("nope"), NotFound);
}

MetaStrategy two_agent_meta(std::vector<PolicyId> a, std::vector<double> pa,
                            std::vector<PolicyId> b, std::vector<double> pb) {
  return MetaStrategy{{AgentDistribution{std::move(a), std::move(pa)},
                       AgentDistribution{std::move(b), std::move(pb)}}};
}

TEST(SampleCombinationTest, PointMassAndOverride) {
  Rng rng(3);
  MetaStrategy point = two_agent_meta({"p0"}, {1.0}, {"q0"}, {1.0});
  EXPECT_EQ(sample_combination(point, {}, rng).policy_ids, (std::vector<PolicyId>{"p0", "q0"}));
  MetaStrategy mixed = two_agent_meta({"p0", "p1"}, {0.5, 0.5}, {"q0"}, {1.0});
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sample_combination(mixed, {{0, "p1"}}, rng).policy_ids,
              (std::vector<PolicyId>{"p1", "q0"}));
  }
  MetaStrategy empty = two_agent_meta({"p0"}, {0.0}, {"q0"}, {1.0});
  EXPECT_THROW(sample_combination(empty, {}, rng), InvalidArgument);
}

TEST(SampleCombinationTest, EmpiricalFrequency) {
  MetaStrategy meta{{AgentDistribution{{"p0", "p1"}, {0.5, 0.5}}}};
  Rng rng(2026);
  int hits = 0;
  for (int i = 0; i < 10000; ++i) hits += sample_combination(meta, {}, rng).policy_ids[0] == "p0";
  EXPECT_GE(hits, 4800);
  EXPECT_LE(hits, 5200);
}

TEST(SampleCombinationTest, ChiSquareOverHundredThousandDraws) {
  MetaStrategy meta{{AgentDistribution{{"a", "b", "c", "d"}, {0.1, 0.2, 0.3, 0.4}}}};
  Rng rng(11);
  std::map<PolicyId, int> counts;
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[sample_combination(meta, {}, rng).policy_ids[0]];
  double chi2 = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double expected = n * meta.agents[0].probs[i];
    const double diff = counts[meta.agents[0].policy_ids[i]] - expected;
    chi2 += diff * diff / expected;
  }
  // 3 degrees of freedom: P(chi2 > 16.27) = 0.001.
  EXPECT_LT(chi2, 16.27);
}

TEST(SampleCombinationTest, DeterministicUnderSeed) {
  MetaStrategy meta = two_agent_meta({"p0", "p1", "p2"}, {0.2, 0.3, 0.5}, {"q0", "q1"}, {0.5, 0.5});
  Rng a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(sample_combination(meta, {}, a), sample_combination(meta, {}, b));
  }
}

TEST(MetaStrategyTest, Validation) {
  std::vector<PolicyPool> pools{PolicyPool(0), PolicyPool(1)};
  pools[0].extend(TabularPolicy("p0"));
  pools[1].extend(TabularPolicy("q0"));
  pools[1].extend(TabularPolicy("q1"));
  EXPECT_NO_THROW(validate_meta_strategy(uniform_meta_strategy(pools), pools));
  EXPECT_THROW(validate_meta_strategy(two_agent_meta({"p0"}, {1.0}, {"zz"}, {1.0}), pools),
               InvalidArgument);
  EXPECT_THROW(validate_meta_strategy(two_agent_meta({"p0"}, {0.9}, {"q0"}, {1.0}), pools),
               InvalidArgument);
  EXPECT_THROW(validate_combination(PolicyCombination{{"p0", "q7"}}, pools), NotFound);
  const MetaStrategy aligned = align_to_pools(two_agent_meta({"p0"}, {1.0}, {"q1"}, {1.0}), pools);
  EXPECT_EQ(aligned.agents[1].policy_ids, (std::vector<PolicyId>{"q0", "q1"}));
  EXPECT_EQ(aligned.agents[1].probs, (std::vector<double>{0.0, 1.0}));
}

}  // namespace
}  // namespace pbmarl
