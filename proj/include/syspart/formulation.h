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

#ifndef SYSPART_FORMULATION_H_
#define SYSPART_FORMULATION_H_

#include <vector>

#include "absl/status/statusor.h"
#include "syspart/bilp.h"
#include "syspart/model.h"

namespace syspart {

struct FormulationOptions {
  // |a_ij| or |b_ik| at or below this is a structural zero: no auxiliary
  // variable, no constraints, no objective term.
  double zero_tolerance = 1e-15;
  // Create every auxiliary variable, diagonal and zero entries included.
  // Only useful for checking that skipping them changes nothing.
  bool dense = false;
};

struct PartitioningProgram;

absl::StatusOr<PartitioningProgram> BuildPartitioningBilp(
    const StateSpaceModel& model, int num_groups,
    const FormulationOptions& options);

// Where each grouping and auxiliary variable of the partitioning program
// lives in the BilpModel.
//   alpha(p, i): state i is in group p.
//   beta(p, k):  input k is in group p.
//   gamma(p, i, j) = alpha_pi (1 - alpha_pj), created only for a_ij != 0.
//   delta(p, i, k) = alpha_pi (1 - beta_pk), created only for b_ik != 0.
class VariableIndex {
 public:
  struct Auxiliary {
    int group;
    int row;     // state i
    int column;  // state j for gamma, input k for delta
    VarId var;
    double weight;  // |a_ij| or |b_ik|
  };

  VariableIndex(int num_groups, int num_states, int num_inputs);

  int num_groups() const { return num_groups_; }
  int num_states() const { return num_states_; }
  int num_inputs() const { return num_inputs_; }

  VarId alpha(int p, int i) const { return alpha_[p * num_states_ + i]; }
  VarId beta(int p, int k) const { return beta_[p * num_inputs_ + k]; }
  const std::vector<Auxiliary>& gammas() const { return gammas_; }
  const std::vector<Auxiliary>& deltas() const { return deltas_; }

  int num_variables() const;

 private:
  friend absl::StatusOr<PartitioningProgram> BuildPartitioningBilp(
      const StateSpaceModel&, int, const FormulationOptions&);

  int num_groups_;
  int num_states_;
  int num_inputs_;
  std::vector<VarId> alpha_;
  std::vector<VarId> beta_;
  std::vector<Auxiliary> gammas_;
  std::vector<Auxiliary> deltas_;
};

struct PartitioningProgram {
  BilpModel model;
  VariableIndex index;
};

// The linearised partitioning program: at least one state and one input per
// group, every state and input in exactly one group, four linking rows per
// gamma and per delta, and the objective sum gamma |a_ij| + delta |b_ik|.
absl::StatusOr<PartitioningProgram> BuildPartitioningBilp(
    const StateSpaceModel& model, int num_groups,
    const FormulationOptions& options = {});

// Reads alpha and beta back out of an optimal solution and checks that every
// auxiliary equals its defining product. Any mismatch is an InternalError.
absl::StatusOr<GroupingPair> DecodeSolution(const BilpSolution& solution,
                                            const VariableIndex& index);

// Relabels groups in order of first appearance over states 1..N (then inputs
// 1..M). Two groupings describe the same partitioning iff their canonical
// forms are equal.
GroupingPair Canonicalize(const GroupingPair& grouping);

}  // namespace syspart

#endif  // SYSPART_FORMULATION_H_
