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

#include "syspart/engine.h"

#include <set>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "syspart/formulation.h"
#include "syspart/model_io.h"
#include "syspart/oracle.h"
#include "test_util.h"

namespace syspart {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

StateSpaceModel Load(const char* file) {
  absl::StatusOr<StateSpaceModel> model = ReadModelFile(testing::DataPath(file));
  EXPECT_TRUE(model.ok()) << model.status();
  return *std::move(model);
}

GroupingPair Canonical(int groups, std::vector<int> states,
                       std::vector<int> inputs) {
  return Canonicalize(*GroupingPair::FromLabels(groups, std::move(states),
                                                std::move(inputs)));
}

TEST(CountPartitioningsTest, SmallCases) {
  EXPECT_EQ(CountPartitionings(2, 2, 2), 2);
  EXPECT_EQ(CountPartitionings(3, 2, 2), 6);
  EXPECT_EQ(CountPartitionings(5, 5, 3), 3750);
  EXPECT_EQ(CountPartitionings(5, 5, 2), 450);
  EXPECT_EQ(CountPartitionings(200, 200, 20),
            std::numeric_limits<int64_t>::max());
}

TEST(PartitionTest, TurbofanNeedsNoCuts) {
  const SolveReport report = *Partition(Load("f100.json"), 2);
  ASSERT_EQ(report.outcome, Outcome::kControllable);
  EXPECT_EQ(report.grouping, Canonical(2, {1, 1, 1, 0, 1}, {0, 1, 1, 1, 1}));
  EXPECT_NEAR(report.objective, 2.400783, 1e-6);
  EXPECT_EQ(report.iterations, 1);
  EXPECT_EQ(report.cuts_added, 0);
  ASSERT_EQ(report.subsystems.size(), 2u);
  EXPECT_THAT(report.subsystems[0].states, ElementsAre(0, 1, 2, 4));
  EXPECT_EQ(report.subsystems[0].rank, 4);
  EXPECT_THAT(report.subsystems[1].inputs, ElementsAre(0));
  EXPECT_LT(report.wall_time_s, 5.0);
}

TEST(PartitionTest, CoupledPairsCutLoop) {
  const StateSpaceModel ex2 = Load("ex2.json");
  int callbacks = 0;
  PartitionOptions options;
  options.on_iteration = [&](const IterationRecord&) { ++callbacks; };
  const SolveReport report = *Partition(ex2, 3, options);
  ASSERT_EQ(report.outcome, Outcome::kControllable);
  EXPECT_EQ(report.grouping, Canonical(3, {1, 1, 1, 0, 2}, {1, 1, 2, 1, 0}));
  EXPECT_NEAR(report.objective, 4.0, 1e-9);
  EXPECT_EQ(report.cuts_added, 6 * (report.iterations - 1));
  EXPECT_EQ(callbacks, report.iterations);
  ASSERT_EQ(report.per_iteration.size(), static_cast<size_t>(report.iterations));

  // The deterministic solver reproduces its own count, which sits inside the
  // oracle's bracket [17, 51].
  EXPECT_EQ(report.iterations, 18);

  std::set<GroupingPair> seen;
  double previous = -1.0;
  for (size_t i = 0; i < report.per_iteration.size(); ++i) {
    const IterationRecord& r = report.per_iteration[i];
    EXPECT_TRUE(seen.insert(r.grouping).second) << "revisited at " << i;
    EXPECT_GE(r.objective, previous - 1e-12);
    previous = r.objective;
    EXPECT_EQ(r.AllControllable(), i + 1 == report.per_iteration.size());
    EXPECT_NEAR(r.objective, *InteractionCostElements(ex2, r.grouping), 1e-9);
  }
  EXPECT_EQ(report.per_iteration.front().objective, 0.0);

  // Every controllable partitioning of cost 4 was visited once.
  EXPECT_EQ(report.ties.controllable_optima, 10);
  EXPECT_EQ(report.ties.cuts, 6 * report.ties.solves);
}

TEST(PartitionTest, WithoutTieResolutionStillOptimal) {
  PartitionOptions options;
  options.resolve_ties = false;
  const StateSpaceModel ex2 = Load("ex2.json");
  const SolveReport report = *Partition(ex2, 3, options);
  ASSERT_EQ(report.outcome, Outcome::kControllable);
  EXPECT_NEAR(report.objective, 4.0, 1e-9);
  EXPECT_EQ(report.ties.solves, 0);
  EXPECT_EQ(report.grouping, report.per_iteration.back().grouping);
  const std::vector<Subsystem> parts = *ExtractPartition(ex2, *report.grouping);
  for (const Subsystem& s : parts) {
    EXPECT_TRUE(*IsControllable(s));
  }
}

TEST(PartitionTest, NoControllablePartition) {
  // The second state is driven by nothing, whichever group it lands in.
  const StateSpaceModel model = *StateSpaceModel::Create(
      Matrix::Identity(2), Matrix{{1, 0}, {0, 0}}, "dead state");
  const SolveReport report = *Partition(model, 2);
  EXPECT_EQ(report.outcome, Outcome::kNoControllablePartition);
  EXPECT_FALSE(report.grouping.has_value());
  // Both partitionings are visited and cut, then the program is infeasible.
  EXPECT_EQ(report.iterations, 3);
  EXPECT_EQ(report.cuts_added, 4);
}

TEST(PartitionTest, IterationLimitAborts) {
  PartitionOptions options;
  options.max_iterations = 5;
  const SolveReport report = *Partition(Load("ex2.json"), 3, options);
  EXPECT_EQ(report.outcome, Outcome::kAborted);
  EXPECT_EQ(report.iterations, 5);
  EXPECT_THAT(report.abort_reason, HasSubstr("iteration limit"));
  EXPECT_FALSE(report.grouping.has_value());
}

TEST(PartitionTest, NodeLimitAborts) {
  PartitionOptions options;
  options.solver.node_limit = 1;
  const SolveReport report = *Partition(Load("ex2.json"), 3, options);
  EXPECT_EQ(report.outcome, Outcome::kAborted);
  EXPECT_FALSE(report.abort_reason.empty());
}

TEST(PartitionTest, TimeLimitAborts) {
  PartitionOptions options;
  options.solver.time_limit_s = 0.0;
  const SolveReport report = *Partition(Load("ex2.json"), 3, options);
  EXPECT_EQ(report.outcome, Outcome::kAborted);
}

TEST(PartitionTest, InvalidGroupCountIsAnError) {
  absl::StatusOr<SolveReport> report = Partition(Load("ex2.json"), 6);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(PartitionTest, AgreesWithOracleOnRandomModels) {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> dim(2, 4);
  int none = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = dim(rng), m = dim(rng);
    const int groups = std::min({n, m, 2 + trial % 2});
    // Sparse entries make uncontrollable subsystems common.
    Matrix a = testing::RandomIntMatrix(rng, n, n, -1, 1);
    Matrix b = testing::RandomIntMatrix(rng, n, m, 0, 1);
    const StateSpaceModel model = *StateSpaceModel::Create(a, b);
    const SolveReport report = *Partition(model, groups);
    const OracleResult oracle = *BruteForceOptimum(model, groups);
    if (!oracle.best_controllable.has_value()) {
      ++none;
      EXPECT_EQ(report.outcome, Outcome::kNoControllablePartition);
      continue;
    }
    ASSERT_EQ(report.outcome, Outcome::kControllable) << "trial " << trial;
    EXPECT_NEAR(report.objective, oracle.best_controllable->cost, 1e-9);
    // Tie resolution returns the canonically smallest controllable optimum,
    // which is the first one in the oracle's stable ranking.
    EXPECT_EQ(*report.grouping, oracle.best_controllable->grouping)
        << "trial " << trial;
  }
  EXPECT_GT(none, 0);
}

}  // namespace
}  // namespace syspart
