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

#ifndef SYSPART_ENGINE_H_
#define SYSPART_ENGINE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "syspart/bilp.h"
#include "syspart/formulation.h"
#include "syspart/model.h"
#include "syspart/numerics.h"

namespace syspart {

struct SubsystemVerdict {
  std::vector<int> states;  // 0-based, increasing
  std::vector<int> inputs;  // 0-based, increasing
  int rank = 0;
  int num_states = 0;  // N_p
  bool controllable = false;
};

struct IterationRecord {
  double objective = 0.0;
  GroupingPair grouping;  // canonical form
  std::vector<SubsystemVerdict> subsystems;
  int64_t nodes_explored = 0;

  bool AllControllable() const;
};

struct PartitionOptions {
  RankTolerance rank_tolerance;
  FormulationOptions formulation;
  // Per-solve node limit and integrality tolerance. The time limit applies to
  // the whole loop: each solve gets whatever remains.
  BilpOptions solver;
  // Number of solves before giving up, tie resolution included. Zero means
  // one more than the number of distinct partitionings: each is visited at
  // most once, and the last solve may prove that none is left.
  int64_t max_iterations = 0;
  // After the loop reaches the optimum, keep solving under an objective cap
  // to visit every other partitioning of equal cost, and return the
  // controllable one whose canonical form is smallest. Makes the answer
  // independent of which tied optimum the solver happens to reach first.
  bool resolve_ties = true;
  // Called after every solve of the main loop with the record just appended.
  std::function<void(const IterationRecord&)> on_iteration;
};

enum class Outcome { kControllable, kNoControllablePartition, kAborted };

struct SolveReport {
  Outcome outcome = Outcome::kAborted;
  // Set iff outcome == kControllable; canonical form.
  std::optional<GroupingPair> grouping;
  std::vector<SubsystemVerdict> subsystems;  // of `grouping`
  double objective = 0.0;
  std::string abort_reason;
  int iterations = 0;  // BILP solves
  int cuts_added = 0;
  std::vector<IterationRecord> per_iteration;
  // Extra solves spent on tie resolution; not counted in iterations or
  // cuts_added.
  struct TieResolution {
    int solves = 0;
    int cuts = 0;
    int controllable_optima = 0;  // including the one the loop found
  } ties;
  double wall_time_s = 0.0;
};

// Least interacting partitioning into `num_groups` groups whose subsystems
// are all controllable. Each round solves the program, tests every
// subsystem, and if any is uncontrollable adds the P! cuts for that
// partitioning before solving again. With resolve_ties the returned grouping
// is the canonically smallest among the equally cheap controllable ones; the
// last per_iteration entry is still the one the loop stopped on. Invalid
// input is an error status; solver limits give a kAborted report.
absl::StatusOr<SolveReport> Partition(const StateSpaceModel& model,
                                      int num_groups,
                                      const PartitionOptions& options = {});

// Number of distinct partitionings of N states and M inputs into P groups,
// surj(N, P) * surj(M, P) / P!, saturating at INT64_MAX.
int64_t CountPartitionings(int num_states, int num_inputs, int num_groups);

std::string OutcomeName(Outcome outcome);

}  // namespace syspart

#endif  // SYSPART_ENGINE_H_
