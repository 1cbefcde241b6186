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

// Brute-force reference results for small models. Used to check the
// optimising path; it shares no code with the formulation or the solver.

#ifndef SYSPART_ORACLE_H_
#define SYSPART_ORACLE_H_

#include <functional>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "syspart/model.h"
#include "syspart/numerics.h"

namespace syspart {

// Calls `visit` once per distinct partitioning, in canonical form and in
// lexicographic order of (state labels, input labels). State labels run over
// restricted growth strings with exactly P blocks; input labels over every
// surjection onto the P groups those fix.
absl::Status EnumerateGroupings(
    int num_states, int num_inputs, int num_groups,
    const std::function<void(const GroupingPair&)>& visit);

struct RankedGrouping {
  double cost = 0.0;
  bool controllable = false;
  GroupingPair grouping;
};

struct OracleResult {
  std::optional<RankedGrouping> best_controllable;
  // Ascending cost, ties in enumeration order.
  std::vector<RankedGrouping> ranking;
};

struct OracleOptions {
  // Used only when the model is not integer-valued; integer models get an
  // exact rational rank.
  RankTolerance rank_tolerance;
  int max_dimension = 7;
};

absl::StatusOr<OracleResult> BruteForceOptimum(
    const StateSpaceModel& model, int num_groups,
    const OracleOptions& options = {});

// How the ranking splits around a reference cost.
struct CostCensus {
  int uncontrollable_below = 0;
  int uncontrollable_tied = 0;
  int controllable_tied = 0;
};

// Costs within `tolerance` of `cost` count as tied.
CostCensus CensusAround(const OracleResult& result, double cost,
                        double tolerance = 1e-9);

}  // namespace syspart

#endif  // SYSPART_ORACLE_H_
