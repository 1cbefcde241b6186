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

#include "syspart/formulation.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace syspart {

VariableIndex::VariableIndex(int num_groups, int num_states, int num_inputs)
    : num_groups_(num_groups),
      num_states_(num_states),
      num_inputs_(num_inputs),
      alpha_(static_cast<size_t>(num_groups) * num_states),
      beta_(static_cast<size_t>(num_groups) * num_inputs) {}

int VariableIndex::num_variables() const {
  return static_cast<int>(alpha_.size() + beta_.size() + gammas_.size() +
                          deltas_.size());
}

namespace {

// Four rows forcing aux = x (1 - y) at every binary point:
//   aux <= x + y,  aux <= 1 + x - y,  aux >= x - y,  aux <= 2 - x - y.
// The dense layout also asks for diagonal products (x == y), so repeated
// variables are merged and cancelled terms dropped.
absl::Status AddProductRows(BilpModel& model, VarId aux, VarId x, VarId y) {
  struct Row {
    double cx, cy;
    Sense sense;
    double rhs;
  };
  constexpr Row kRows[] = {
      {-1.0, -1.0, Sense::kLessEqual, 0.0},
      {-1.0, 1.0, Sense::kLessEqual, 1.0},
      {-1.0, 1.0, Sense::kGreaterEqual, 0.0},
      {1.0, 1.0, Sense::kLessEqual, 2.0},
  };
  for (const Row& r : kRows) {
    LinearConstraint row{{{aux, 1.0}}, r.sense, r.rhs};
    if (x == y) {
      if (r.cx + r.cy != 0.0) row.terms.push_back({x, r.cx + r.cy});
    } else {
      row.terms.push_back({x, r.cx});
      row.terms.push_back({y, r.cy});
    }
    if (absl::Status s = model.AddConstraint(std::move(row)); !s.ok()) return s;
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<PartitioningProgram> BuildPartitioningBilp(
    const StateSpaceModel& model, int num_groups,
    const FormulationOptions& options) {
  if (absl::Status s = ValidateProblem(model, num_groups); !s.ok()) return s;
  const int groups = num_groups;
  const int n = model.num_states();
  const int m = model.num_inputs();
  PartitioningProgram program{BilpModel(), VariableIndex(groups, n, m)};
  BilpModel& bilp = program.model;
  VariableIndex& index = program.index;

  for (int p = 0; p < groups; ++p) {
    for (int i = 0; i < n; ++i) index.alpha_[p * n + i] = bilp.AddVariable();
  }
  for (int p = 0; p < groups; ++p) {
    for (int k = 0; k < m; ++k) index.beta_[p * m + k] = bilp.AddVariable();
  }
  const auto keep = [&](double magnitude, bool diagonal) {
    if (options.dense) return true;
    return !diagonal && magnitude > options.zero_tolerance;
  };
  for (int p = 0; p < groups; ++p) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double w = std::abs(model.a()(i, j));
        if (!keep(w, i == j)) continue;
        index.gammas_.push_back({p, i, j, bilp.AddVariable(), w});
      }
    }
  }
  for (int p = 0; p < groups; ++p) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < m; ++k) {
        const double w = std::abs(model.b()(i, k));
        if (!keep(w, false)) continue;
        index.deltas_.push_back({p, i, k, bilp.AddVariable(), w});
      }
    }
  }

  // Non-empty groups.
  for (int p = 0; p < groups; ++p) {
    LinearConstraint row{{}, Sense::kGreaterEqual, 1.0};
    for (int i = 0; i < n; ++i) row.terms.push_back({index.alpha(p, i), 1.0});
    if (absl::Status s = bilp.AddConstraint(std::move(row)); !s.ok()) return s;
  }
  for (int p = 0; p < groups; ++p) {
    LinearConstraint row{{}, Sense::kGreaterEqual, 1.0};
    for (int k = 0; k < m; ++k) row.terms.push_back({index.beta(p, k), 1.0});
    if (absl::Status s = bilp.AddConstraint(std::move(row)); !s.ok()) return s;
  }
  // Each state and each input in exactly one group.
  for (int i = 0; i < n; ++i) {
    LinearConstraint row{{}, Sense::kEqual, 1.0};
    for (int p = 0; p < groups; ++p) row.terms.push_back({index.alpha(p, i), 1.0});
    if (absl::Status s = bilp.AddConstraint(std::move(row)); !s.ok()) return s;
  }
  for (int k = 0; k < m; ++k) {
    LinearConstraint row{{}, Sense::kEqual, 1.0};
    for (int p = 0; p < groups; ++p) row.terms.push_back({index.beta(p, k), 1.0});
    if (absl::Status s = bilp.AddConstraint(std::move(row)); !s.ok()) return s;
  }

  for (const VariableIndex::Auxiliary& g : index.gammas_) {
    if (absl::Status s = AddProductRows(bilp, g.var, index.alpha(g.group, g.row),
                                        index.alpha(g.group, g.column));
        !s.ok()) {
      return s;
    }
    if (absl::Status s = bilp.SetObjectiveCoefficient(g.var, g.weight); !s.ok()) {
      return s;
    }
  }
  for (const VariableIndex::Auxiliary& d : index.deltas_) {
    if (absl::Status s = AddProductRows(bilp, d.var, index.alpha(d.group, d.row),
                                        index.beta(d.group, d.column));
        !s.ok()) {
      return s;
    }
    if (absl::Status s = bilp.SetObjectiveCoefficient(d.var, d.weight); !s.ok()) {
      return s;
    }
  }
  return program;
}

absl::StatusOr<GroupingPair> DecodeSolution(const BilpSolution& solution,
                                            const VariableIndex& index) {
  if (solution.status != BilpStatus::kOptimal) {
    return absl::FailedPreconditionError("solution is not optimal");
  }
  if (static_cast<int>(solution.assignment.size()) != index.num_variables()) {
    return absl::InternalError(absl::StrFormat(
        "assignment has %d values for %d variables",
        solution.assignment.size(), index.num_variables()));
  }
  const int groups = index.num_groups();
  Matrix alpha(groups, index.num_states());
  Matrix beta(groups, index.num_inputs());
  for (int p = 0; p < groups; ++p) {
    for (int i = 0; i < index.num_states(); ++i) {
      alpha(p, i) = solution.value(index.alpha(p, i)) ? 1.0 : 0.0;
    }
    for (int k = 0; k < index.num_inputs(); ++k) {
      beta(p, k) = solution.value(index.beta(p, k)) ? 1.0 : 0.0;
    }
  }
  absl::StatusOr<GroupingPair> grouping = GroupingPair::FromMatrices(alpha, beta);
  if (!grouping.ok()) {
    return absl::InternalError(absl::StrCat(
        "solver returned an invalid grouping: ", grouping.status().message()));
  }
  for (const VariableIndex::Auxiliary& g : index.gammas()) {
    const int expected =
        grouping->alpha(g.group, g.row) * (1 - grouping->alpha(g.group, g.column));
    if (solution.value(g.var) != (expected == 1)) {
      return absl::InternalError(absl::StrFormat(
          "gamma(%d, %d, %d) disagrees with alpha", g.group + 1, g.row + 1,
          g.column + 1));
    }
  }
  for (const VariableIndex::Auxiliary& d : index.deltas()) {
    const int expected =
        grouping->alpha(d.group, d.row) * (1 - grouping->beta(d.group, d.column));
    if (solution.value(d.var) != (expected == 1)) {
      return absl::InternalError(absl::StrFormat(
          "delta(%d, %d, %d) disagrees with alpha and beta", d.group + 1,
          d.row + 1, d.column + 1));
    }
  }
  return grouping;
}

GroupingPair Canonicalize(const GroupingPair& grouping) {
  const int groups = grouping.num_groups();
  std::vector<int> relabel(groups, -1);
  int next = 0;
  const auto visit = [&](int label) {
    if (relabel[label] < 0) relabel[label] = next++;
  };
  for (const int label : grouping.state_groups()) visit(label);
  for (const int label : grouping.input_groups()) visit(label);
  return grouping.Relabeled(relabel);
}

}  // namespace syspart
