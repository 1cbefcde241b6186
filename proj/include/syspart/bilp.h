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

// Exact 0-1 integer linear programming: a small modelling layer, the LP
// relaxation and a depth-first branch-and-bound that proves optimality.

#ifndef SYSPART_BILP_H_
#define SYSPART_BILP_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace syspart {

// Handle to a binary variable. Only meaningful for the model that issued it.
struct VarId {
  int value = -1;

  friend auto operator<=>(const VarId&, const VarId&) = default;
};

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct LinearTerm {
  VarId var;
  double coefficient = 0.0;
};

struct LinearConstraint {
  std::vector<LinearTerm> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;

  // Left-hand side at a point indexed by VarId.
  double Activity(std::span<const double> point) const;
  double Activity(std::span<const uint8_t> assignment) const;
  bool IsSatisfied(double activity, double tolerance) const;
};

// Minimisation over binary variables.
class BilpModel {
 public:
  VarId AddVariable();
  int num_variables() const { return static_cast<int>(objective_.size()); }

  absl::Status SetObjectiveCoefficient(VarId var, double coefficient);
  double objective_coefficient(VarId var) const {
    return objective_[var.value];
  }
  std::span<const double> objective() const { return objective_; }

  // Rejects unknown or repeated variables and non-finite numbers.
  absl::Status AddConstraint(LinearConstraint constraint);
  // Same as AddConstraint, but tallied separately so callers can tell cuts
  // apart from the base formulation.
  absl::Status AddCut(LinearConstraint cut);

  std::span<const LinearConstraint> constraints() const { return constraints_; }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  int num_cuts() const { return num_cuts_; }

  double EvaluateObjective(std::span<const uint8_t> assignment) const;
  // Every constraint holds at the assignment. Sums of integer coefficients
  // over binaries are exact in double precision; otherwise 1e-9 absolute.
  bool IsFeasible(std::span<const uint8_t> assignment) const;

 private:
  absl::Status Validate(const LinearConstraint& constraint) const;

  std::vector<double> objective_;
  std::vector<LinearConstraint> constraints_;
  int num_cuts_ = 0;
};

struct Fixing {
  VarId var;
  bool value = false;
};

enum class LpStatus { kOptimal, kInfeasible };

struct LpRelaxation {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;         // set iff kOptimal
  std::vector<double> point;  // indexed by VarId, set iff kOptimal
};

// Continuous relaxation with 0 <= x <= 1, each fixed variable pinned to its
// value. Solved from scratch by the two-phase bounded simplex.
absl::StatusOr<LpRelaxation> SolveLpRelaxation(
    const BilpModel& model, std::span<const Fixing> fixings = {});

struct BilpOptions {
  // Zero means unlimited.
  int64_t node_limit = 0;
  std::optional<double> time_limit_s;
  // A relaxation value this close to 0 or 1 counts as integral.
  double integrality_tolerance = 1e-9;
  // Re-optimise child nodes from the parent tableau with the dual simplex.
  // When false every node LP is rebuilt and solved from scratch.
  bool warm_start = true;
};

enum class BilpStatus { kOptimal, kInfeasible };

struct BilpSolution {
  BilpStatus status = BilpStatus::kInfeasible;
  std::vector<uint8_t> assignment;  // indexed by VarId, set iff kOptimal
  double objective = 0.0;           // set iff kOptimal
  int64_t nodes_explored = 0;
  double proof_gap = 0.0;  // always 0 on return: the search ran to completion

  bool value(VarId var) const { return assignment[var.value] != 0; }
};

// Branch-and-bound to proven optimality. Depth-first, most fractional
// variable first (lowest VarId on ties), the 1-branch before the 0-branch.
// Hitting a node or time limit returns ResourceExhausted or
// DeadlineExceeded, never an Infeasible solution.
absl::StatusOr<BilpSolution> SolveBilp(const BilpModel& model,
                                       const BilpOptions& options = {});

// True for the statuses SolveBilp uses to report an aborted search.
bool IsSearchAborted(const absl::Status& status);

}  // namespace syspart

#endif  // SYSPART_BILP_H_
