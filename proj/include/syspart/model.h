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

#ifndef SYSPART_MODEL_H_
#define SYSPART_MODEL_H_

#include <compare>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "syspart/numerics.h"

namespace syspart {

// Continuous-time LTI model dx/dt = A x + B u. Only the matrices matter here;
// no trajectories are ever computed.
class StateSpaceModel {
 public:
  // A must be N x N, B must be N x M, both non-empty with finite entries.
  static absl::StatusOr<StateSpaceModel> Create(Matrix a, Matrix b,
                                                std::string name = "");

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  const std::string& name() const { return name_; }
  int num_states() const { return a_.rows(); }
  int num_inputs() const { return b_.cols(); }

 private:
  StateSpaceModel(Matrix a, Matrix b, std::string name)
      : a_(std::move(a)), b_(std::move(b)), name_(std::move(name)) {}

  Matrix a_;
  Matrix b_;
  std::string name_;
};

// A partitioning of states and inputs into P groups, held as the state
// grouping matrix alpha (P x N) and the input grouping matrix beta (P x M).
// Internally every column is a single one, so the matrices are stored as one
// group label per state and per input. Every group owns at least one state
// and at least one input.
class GroupingPair {
 public:
  // Labels are 0-based group indices.
  static absl::StatusOr<GroupingPair> FromLabels(int num_groups,
                                                 std::vector<int> state_groups,
                                                 std::vector<int> input_groups);
  // Binary matrices as written in the literature: rows are groups.
  static absl::StatusOr<GroupingPair> FromMatrices(const Matrix& alpha,
                                                   const Matrix& beta);

  int num_groups() const { return num_groups_; }
  int num_states() const { return static_cast<int>(state_groups_.size()); }
  int num_inputs() const { return static_cast<int>(input_groups_.size()); }

  int state_group(int i) const { return state_groups_[i]; }
  int input_group(int k) const { return input_groups_[k]; }
  std::span<const int> state_groups() const { return state_groups_; }
  std::span<const int> input_groups() const { return input_groups_; }

  int alpha(int p, int i) const { return state_groups_[i] == p ? 1 : 0; }
  int beta(int p, int k) const { return input_groups_[k] == p ? 1 : 0; }
  Matrix AlphaMatrix() const;
  Matrix BetaMatrix() const;

  // Increasing state / input indices of group p.
  std::vector<int> StatesOf(int p) const;
  std::vector<int> InputsOf(int p) const;
  // N_p and M_p.
  int StateCount(int p) const;
  int InputCount(int p) const;

  // Same grouping with group p renamed to permutation[p].
  GroupingPair Relabeled(std::span<const int> permutation) const;

  // Orders by group count, then state labels, then input labels.
  friend auto operator<=>(const GroupingPair&, const GroupingPair&) = default;

 private:
  GroupingPair(int num_groups, std::vector<int> state_groups,
               std::vector<int> input_groups)
      : num_groups_(num_groups),
        state_groups_(std::move(state_groups)),
        input_groups_(std::move(input_groups)) {}

  int num_groups_ = 0;
  std::vector<int> state_groups_;
  std::vector<int> input_groups_;
};

// trace(alpha_1^T alpha_2) and trace(beta_1^T beta_2): the number of states
// (inputs) that both groupings put in the same-numbered group. Equal to N (M)
// exactly when the two state (input) assignments coincide.
int TraceAlphaProduct(const GroupingPair& g1, const GroupingPair& g2);
int TraceBetaProduct(const GroupingPair& g1, const GroupingPair& g2);

// One group of a partitioning, cut out of the model without the couplings to
// other groups.
struct Subsystem {
  int group = 0;
  std::vector<int> state_indices;  // strictly increasing, non-empty
  std::vector<int> input_indices;  // strictly increasing, non-empty
  Matrix a_pp;
  Matrix b_pp;

  int num_states() const { return static_cast<int>(state_indices.size()); }
  int num_inputs() const { return static_cast<int>(input_indices.size()); }
};

// Checks 1 < P <= min(N, M).
absl::Status ValidateProblem(const StateSpaceModel& model, int num_groups);

absl::StatusOr<std::vector<Subsystem>> ExtractPartition(
    const StateSpaceModel& model, const GroupingPair& grouping);

// Interaction metric summed over groups p and foreign groups j != p of
// |A_pj| + |B_pj|, evaluated block by block.
absl::StatusOr<double> InteractionCostBlocks(const StateSpaceModel& model,
                                             const GroupingPair& grouping);

// The same metric evaluated element-wise:
//   sum_p sum_i alpha_pi * (sum_j |a_ij| (1 - alpha_pj)
//                           + sum_k |b_ik| (1 - beta_pk)).
absl::StatusOr<double> InteractionCostElements(const StateSpaceModel& model,
                                               const GroupingPair& grouping);

// [B_pp | A_pp B_pp | ... | A_pp^(N_p - 1) B_pp], of shape N_p x (N_p M_p).
Matrix ControllabilityMatrix(const Subsystem& subsystem);

absl::StatusOr<int> ControllabilityRank(const Subsystem& subsystem,
                                        const RankTolerance& tolerance = {});

// True iff the controllability matrix has full row rank N_p.
absl::StatusOr<bool> IsControllable(const Subsystem& subsystem,
                                    const RankTolerance& tolerance = {});

}  // namespace syspart

#endif  // SYSPART_MODEL_H_
