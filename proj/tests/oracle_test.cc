// Copyright 2026 The syspart Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "syspart/oracle.h"

#include <set>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "syspart/engine.h"
#include "syspart/formulation.h"
#include "syspart/model_io.h"
#include "test_util.h"

namespace syspart {
namespace {

using ::testing::HasSubstr;

StateSpaceModel Load(const char* file) {
  absl::StatusOr<StateSpaceModel> model = ReadModelFile(testing::DataPath(file));
  EXPECT_TRUE(model.ok()) << model.status();
  return *std::move(model);
}

std::vector<GroupingPair> Collect(int n, int m, int groups) {
  std::vector<GroupingPair> out;
  EXPECT_TRUE(EnumerateGroupings(n, m, groups, [&](const GroupingPair& g) {
                out.push_back(g);
              }).ok());
  return out;
}

TEST(EnumerateGroupingsTest, Counts) {
  EXPECT_EQ(Collect(2, 2, 2).size(), 2u);
  EXPECT_EQ(Collect(3, 2, 2).size(), 6u);
  EXPECT_EQ(Collect(5, 5, 3).size(), 3750u);
}

TEST(EnumerateGroupingsTest, RejectsBadParameters) {
  const auto ignore = [](const GroupingPair&) {};
  EXPECT_FALSE(EnumerateGroupings(2, 3, 3, ignore).ok());
  EXPECT_FALSE(EnumerateGroupings(3, 3, 0, ignore).ok());
  EXPECT_FALSE(EnumerateGroupings(3, 3, 1, ignore).ok());
}

// Independent generation: every labelling of every element, kept if
// surjective, deduplicated through canonical form.
TEST(EnumerateGroupingsTest, CompleteCanonicalAndOrdered) {
  for (int groups = 2; groups <= 3; ++groups) {
    for (int n = groups; n <= 5; ++n) {
      for (int m = groups; m <= 5; ++m) {
        std::set<GroupingPair> expected;
        int total = 1;
        for (int e = 0; e < n + m; ++e) total *= groups;
        for (int code = 0; code < total; ++code) {
          std::vector<int> states(n), inputs(m);
          int rest = code;
          for (int& l : states) l = rest % groups, rest /= groups;
          for (int& l : inputs) l = rest % groups, rest /= groups;
          absl::StatusOr<GroupingPair> g =
              GroupingPair::FromLabels(groups, states, inputs);
          if (g.ok()) expected.insert(Canonicalize(*g));
        }
        const std::vector<GroupingPair> got = Collect(n, m, groups);
        ASSERT_EQ(got.size(), expected.size()) << n << " " << m << " " << groups;
        EXPECT_EQ(static_cast<int64_t>(got.size()),
                  CountPartitionings(n, m, groups));
        for (size_t i = 0; i < got.size(); ++i) {
          EXPECT_EQ(Canonicalize(got[i]), got[i]);
          if (i > 0) {
            EXPECT_LT(got[i - 1], got[i]);
          }
        }
        EXPECT_TRUE(std::equal(got.begin(), got.end(), expected.begin()));
      }
    }
  }
}

TEST(BruteForceOptimumTest, CoupledPairs) {
  const OracleResult result = *BruteForceOptimum(Load("ex2.json"), 3);
  ASSERT_TRUE(result.best_controllable.has_value());
  EXPECT_DOUBLE_EQ(result.best_controllable->cost, 4.0);
  EXPECT_EQ(result.best_controllable->grouping,
            Canonicalize(*GroupingPair::FromLabels(3, {1, 1, 1, 0, 2},
                                                   {1, 1, 2, 1, 0})));
  EXPECT_EQ(result.ranking.size(), 3750u);
  EXPECT_EQ(result.ranking.front().cost, 0.0);
  for (size_t i = 1; i < result.ranking.size(); ++i) {
    EXPECT_LE(result.ranking[i - 1].cost, result.ranking[i].cost);
  }
}

TEST(BruteForceOptimumTest, CoupledPairsCensus) {
  const OracleResult result = *BruteForceOptimum(Load("ex2.json"), 3);
  const CostCensus census = CensusAround(result, 4.0);
  EXPECT_EQ(census.uncontrollable_below, 17);
  EXPECT_EQ(census.uncontrollable_tied, 34);
  EXPECT_EQ(census.controllable_tied, 10);
}

TEST(BruteForceOptimumTest, TurbofanOptimumIsAlsoTheGlobalOne) {
  const OracleResult result = *BruteForceOptimum(Load("f100.json"), 2);
  ASSERT_TRUE(result.best_controllable.has_value());
  EXPECT_NEAR(result.best_controllable->cost, 2.400783, 1e-6);
  EXPECT_EQ(result.best_controllable->grouping,
            Canonicalize(*GroupingPair::FromLabels(2, {1, 1, 1, 0, 1},
                                                   {0, 1, 1, 1, 1})));
  // S(5,2) = 15 ways to split each side, two ways to pair them up.
  EXPECT_EQ(result.ranking.size(), 450u);
  EXPECT_EQ(result.ranking.front().grouping, result.best_controllable->grouping);
  EXPECT_LT(result.ranking[0].cost, result.ranking[1].cost);
}

TEST(BruteForceOptimumTest, AlignedBlockDiagonalModelCostsNothing) {
  const StateSpaceModel model = *StateSpaceModel::Create(
      Matrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 2}}, Matrix{{0, 0}, {1, 0}, {0, 1}});
  const OracleResult result = *BruteForceOptimum(model, 2);
  ASSERT_TRUE(result.best_controllable.has_value());
  EXPECT_EQ(result.best_controllable->cost, 0.0);
}

TEST(BruteForceOptimumTest, NoControllablePartition) {
  const StateSpaceModel model =
      *StateSpaceModel::Create(Matrix::Identity(2), Matrix{{1, 0}, {0, 0}});
  const OracleResult result = *BruteForceOptimum(model, 2);
  EXPECT_FALSE(result.best_controllable.has_value());
  EXPECT_EQ(result.ranking.size(), 2u);
}

TEST(BruteForceOptimumTest, SizeGuard) {
  std::mt19937_64 rng(41);
  const StateSpaceModel model =
      *StateSpaceModel::Create(testing::RandomIntMatrix(rng, 8, 8, -1, 1),
                               testing::RandomIntMatrix(rng, 8, 3, -1, 1));
  absl::StatusOr<OracleResult> result = BruteForceOptimum(model, 2);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_THAT(result.status().message(), HasSubstr("desk-sized"));
  EXPECT_TRUE(BruteForceOptimum(model, 2, {.max_dimension = 8}).ok());
}

}  // namespace
}  // namespace syspart
