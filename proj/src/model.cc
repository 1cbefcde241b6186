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

#include "syspart/model.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace syspart {

absl::StatusOr<StateSpaceModel> StateSpaceModel::Create(Matrix a, Matrix b,
                                                        std::string name) {
  if (a.empty() || b.empty()) {
    return absl::InvalidArgumentError("A and B must be non-empty");
  }
  if (a.rows() != a.cols()) {
    return absl::InvalidArgumentError(
        absl::StrCat("A must be square, got ", a.ShapeString()));
  }
  if (b.rows() != a.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("B must have as many rows as A: A is ", a.ShapeString(),
                     ", B is ", b.ShapeString()));
  }
  if (!a.AllFinite()) return absl::InvalidArgumentError("A has non-finite entries");
  if (!b.AllFinite()) return absl::InvalidArgumentError("B has non-finite entries");
  return StateSpaceModel(std::move(a), std::move(b), std::move(name));
}

namespace {

absl::Status CheckLabels(int num_groups, std::span<const int> labels,
                         const char* what) {
  std::vector<int> count(num_groups, 0);
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_groups) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "%s %d assigned to group %d outside [0, %d)", what, i + 1,
          labels[i], num_groups));
    }
    ++count[labels[i]];
  }
  for (int p = 0; p < num_groups; ++p) {
    if (count[p] == 0) {
      return absl::InvalidArgumentError(
          absl::StrFormat("group %d has no %s", p + 1, what));
    }
  }
  return absl::OkStatus();
}

// Reads the group of each column of a binary grouping matrix.
absl::StatusOr<std::vector<int>> LabelsFromMatrix(const Matrix& g,
                                                  const char* name) {
  std::vector<int> labels(g.cols(), -1);
  for (int c = 0; c < g.cols(); ++c) {
    int ones = 0;
    for (int p = 0; p < g.rows(); ++p) {
      const double v = g(p, c);
      if (v == 1.0) {
        labels[c] = p;
        ++ones;
      } else if (v != 0.0) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "%s(%d, %d) = %g is not binary", name, p + 1, c + 1, v));
      }
    }
    if (ones != 1) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "column %d of %s sums to %d, expected 1", c + 1, name, ones));
    }
  }
  return labels;
}

Matrix GroupingMatrix(int num_groups, std::span<const int> labels) {
  Matrix m(num_groups, static_cast<int>(labels.size()));
  for (size_t c = 0; c < labels.size(); ++c) m(labels[c], c) = 1.0;
  return m;
}

}  // namespace

absl::StatusOr<GroupingPair> GroupingPair::FromLabels(
    int num_groups, std::vector<int> state_groups,
    std::vector<int> input_groups) {
  if (num_groups < 1) {
    return absl::InvalidArgumentError("group count must be positive");
  }
  if (absl::Status s = CheckLabels(num_groups, state_groups, "state"); !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckLabels(num_groups, input_groups, "input"); !s.ok()) {
    return s;
  }
  return GroupingPair(num_groups, std::move(state_groups),
                      std::move(input_groups));
}

absl::StatusOr<GroupingPair> GroupingPair::FromMatrices(const Matrix& alpha,
                                                        const Matrix& beta) {
  if (alpha.rows() != beta.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha is ", alpha.ShapeString(), " but beta is ",
                     beta.ShapeString(), "; row counts must match"));
  }
  absl::StatusOr<std::vector<int>> states = LabelsFromMatrix(alpha, "alpha");
  if (!states.ok()) return states.status();
  absl::StatusOr<std::vector<int>> inputs = LabelsFromMatrix(beta, "beta");
  if (!inputs.ok()) return inputs.status();
  return FromLabels(alpha.rows(), *std::move(states), *std::move(inputs));
}

Matrix GroupingPair::AlphaMatrix() const {
  return GroupingMatrix(num_groups_, state_groups_);
}

Matrix GroupingPair::BetaMatrix() const {
  return GroupingMatrix(num_groups_, input_groups_);
}

std::vector<int> GroupingPair::StatesOf(int p) const {
  std::vector<int> out;
  for (int i = 0; i < num_states(); ++i) {
    if (state_groups_[i] == p) out.push_back(i);
  }
  return out;
}

std::vector<int> GroupingPair::InputsOf(int p) const {
  std::vector<int> out;
  for (int k = 0; k < num_inputs(); ++k) {
    if (input_groups_[k] == p) out.push_back(k);
  }
  return out;
}

int GroupingPair::StateCount(int p) const {
  return static_cast<int>(
      std::count(state_groups_.begin(), state_groups_.end(), p));
}

int GroupingPair::InputCount(int p) const {
  return static_cast<int>(
      std::count(input_groups_.begin(), input_groups_.end(), p));
}

GroupingPair GroupingPair::Relabeled(std::span<const int> permutation) const {
  std::vector<int> states(state_groups_.size());
  std::vector<int> inputs(input_groups_.size());
  for (size_t i = 0; i < states.size(); ++i) {
    states[i] = permutation[state_groups_[i]];
  }
  for (size_t k = 0; k < inputs.size(); ++k) {
    inputs[k] = permutation[input_groups_[k]];
  }
  return GroupingPair(num_groups_, std::move(states), std::move(inputs));
}

int TraceAlphaProduct(const GroupingPair& g1, const GroupingPair& g2) {
  int trace = 0;
  for (int i = 0; i < g1.num_states(); ++i) {
    trace += g1.state_group(i) == g2.state_group(i) ? 1 : 0;
  }
  return trace;
}

int TraceBetaProduct(const GroupingPair& g1, const GroupingPair& g2) {
  int trace = 0;
  for (int k = 0; k < g1.num_inputs(); ++k) {
    trace += g1.input_group(k) == g2.input_group(k) ? 1 : 0;
  }
  return trace;
}

absl::Status ValidateProblem(const StateSpaceModel& model, int num_groups) {
  if (!model.a().AllFinite() || !model.b().AllFinite()) {
    return absl::InvalidArgumentError("model has non-finite entries");
  }
  const int bound = std::min(model.num_states(), model.num_inputs());
  if (num_groups <= 1 || num_groups > bound) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "group count P = %d violates 1 < P <= min(N, M) = min(%d, %d) = %d",
        num_groups, model.num_states(), model.num_inputs(), bound));
  }
  return absl::OkStatus();
}

namespace {

absl::Status CheckConformable(const StateSpaceModel& model,
                              const GroupingPair& grouping) {
  if (grouping.num_states() != model.num_states() ||
      grouping.num_inputs() != model.num_inputs()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "grouping covers %d states and %d inputs, model has %d and %d",
        grouping.num_states(), grouping.num_inputs(), model.num_states(),
        model.num_inputs()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<Subsystem>> ExtractPartition(
    const StateSpaceModel& model, const GroupingPair& grouping) {
  if (absl::Status s = CheckConformable(model, grouping); !s.ok()) return s;
  std::vector<Subsystem> out;
  out.reserve(grouping.num_groups());
  for (int p = 0; p < grouping.num_groups(); ++p) {
    Subsystem s;
    s.group = p;
    s.state_indices = grouping.StatesOf(p);
    s.input_indices = grouping.InputsOf(p);
    s.a_pp = model.a().Submatrix(s.state_indices, s.state_indices);
    s.b_pp = model.b().Submatrix(s.state_indices, s.input_indices);
    out.push_back(std::move(s));
  }
  return out;
}

absl::StatusOr<double> InteractionCostBlocks(const StateSpaceModel& model,
                                             const GroupingPair& grouping) {
  if (absl::Status s = CheckConformable(model, grouping); !s.ok()) return s;
  const int groups = grouping.num_groups();
  std::vector<std::vector<int>> states(groups), inputs(groups);
  for (int p = 0; p < groups; ++p) {
    states[p] = grouping.StatesOf(p);
    inputs[p] = grouping.InputsOf(p);
  }
  double cost = 0.0;
  for (int p = 0; p < groups; ++p) {
    for (int j = 0; j < groups; ++j) {
      if (j == p) continue;
      cost += AbsSum(model.a().Submatrix(states[p], states[j]));
      cost += AbsSum(model.b().Submatrix(states[p], inputs[j]));
    }
  }
  return cost;
}

absl::StatusOr<double> InteractionCostElements(const StateSpaceModel& model,
                                               const GroupingPair& grouping) {
  if (absl::Status s = CheckConformable(model, grouping); !s.ok()) return s;
  const Matrix& a = model.a();
  const Matrix& b = model.b();
  double cost = 0.0;
  for (int p = 0; p < grouping.num_groups(); ++p) {
    for (int i = 0; i < model.num_states(); ++i) {
      if (grouping.alpha(p, i) == 0) continue;
      for (int j = 0; j < model.num_states(); ++j) {
        // alpha_pi (1 - alpha_pi) vanishes on the diagonal.
        if (j == i) continue;
        cost += std::abs(a(i, j)) * (1 - grouping.alpha(p, j));
      }
      for (int k = 0; k < model.num_inputs(); ++k) {
        cost += std::abs(b(i, k)) * (1 - grouping.beta(p, k));
      }
    }
  }
  return cost;
}

Matrix ControllabilityMatrix(const Subsystem& subsystem) {
  const int n = subsystem.num_states();
  std::vector<Matrix> blocks;
  blocks.reserve(n);
  blocks.push_back(subsystem.b_pp);
  for (int power = 1; power < n; ++power) {
    // Shapes conform by construction of the subsystem.
    blocks.push_back(*MatMul(subsystem.a_pp, blocks.back()));
  }
  return *HConcat(blocks);
}

absl::StatusOr<int> ControllabilityRank(const Subsystem& subsystem,
                                        const RankTolerance& tolerance) {
  return NumericalRank(ControllabilityMatrix(subsystem), tolerance);
}

absl::StatusOr<bool> IsControllable(const Subsystem& subsystem,
                                    const RankTolerance& tolerance) {
  absl::StatusOr<int> rank = ControllabilityRank(subsystem, tolerance);
  if (!rank.ok()) return rank.status();
  return *rank == subsystem.num_states();
}

}  // namespace syspart
