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

#include "syspart/bilp.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "absl/strings/str_format.h"
#include "simplex.h"

namespace syspart {

using internal::BoundedSimplex;

double LinearConstraint::Activity(std::span<const double> point) const {
  double sum = 0.0;
  for (const LinearTerm& t : terms) sum += t.coefficient * point[t.var.value];
  return sum;
}

double LinearConstraint::Activity(std::span<const uint8_t> assignment) const {
  double sum = 0.0;
  for (const LinearTerm& t : terms) {
    if (assignment[t.var.value] != 0) sum += t.coefficient;
  }
  return sum;
}

bool LinearConstraint::IsSatisfied(double activity, double tolerance) const {
  switch (sense) {
    case Sense::kLessEqual:
      return activity <= rhs + tolerance;
    case Sense::kGreaterEqual:
      return activity >= rhs - tolerance;
    case Sense::kEqual:
      return std::abs(activity - rhs) <= tolerance;
  }
  return false;
}

VarId BilpModel::AddVariable() {
  objective_.push_back(0.0);
  return VarId{num_variables() - 1};
}

absl::Status BilpModel::SetObjectiveCoefficient(VarId var, double coefficient) {
  if (var.value < 0 || var.value >= num_variables()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("unknown variable %d", var.value));
  }
  if (!std::isfinite(coefficient)) {
    return absl::InvalidArgumentError("objective coefficient is not finite");
  }
  objective_[var.value] = coefficient;
  return absl::OkStatus();
}

absl::Status BilpModel::Validate(const LinearConstraint& constraint) const {
  if (!std::isfinite(constraint.rhs)) {
    return absl::InvalidArgumentError("constraint right-hand side is not finite");
  }
  std::vector<bool> seen(num_variables(), false);
  for (const LinearTerm& t : constraint.terms) {
    if (t.var.value < 0 || t.var.value >= num_variables()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("constraint references unknown variable %d",
                          t.var.value));
    }
    if (seen[t.var.value]) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "variable %d appears twice in one constraint", t.var.value));
    }
    seen[t.var.value] = true;
    if (!std::isfinite(t.coefficient)) {
      return absl::InvalidArgumentError("constraint coefficient is not finite");
    }
  }
  return absl::OkStatus();
}

absl::Status BilpModel::AddConstraint(LinearConstraint constraint) {
  if (absl::Status s = Validate(constraint); !s.ok()) return s;
  constraints_.push_back(std::move(constraint));
  return absl::OkStatus();
}

absl::Status BilpModel::AddCut(LinearConstraint cut) {
  if (absl::Status s = AddConstraint(std::move(cut)); !s.ok()) return s;
  ++num_cuts_;
  return absl::OkStatus();
}

double BilpModel::EvaluateObjective(std::span<const uint8_t> assignment) const {
  double value = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    if (assignment[j] != 0) value += objective_[j];
  }
  return value;
}

bool BilpModel::IsFeasible(std::span<const uint8_t> assignment) const {
  for (const LinearConstraint& c : constraints_) {
    if (!c.IsSatisfied(c.Activity(assignment), 1e-9)) return false;
  }
  return true;
}

namespace {

absl::Status UnexpectedSimplexResult(BoundedSimplex::Result result) {
  switch (result) {
    case BoundedSimplex::Result::kUnbounded:
      return absl::InternalError("LP relaxation of a 0-1 model is unbounded");
    case BoundedSimplex::Result::kIterationLimit:
      return absl::InternalError("simplex exceeded its iteration limit");
    default:
      return absl::InternalError("unexpected simplex result");
  }
}

absl::StatusOr<std::pair<std::vector<double>, std::vector<double>>> BoundsFor(
    const BilpModel& model, std::span<const Fixing> fixings) {
  std::vector<double> lower(model.num_variables(), 0.0);
  std::vector<double> upper(model.num_variables(), 1.0);
  for (const Fixing& f : fixings) {
    if (f.var.value < 0 || f.var.value >= model.num_variables()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("fixing references unknown variable %d", f.var.value));
    }
    lower[f.var.value] = upper[f.var.value] = f.value ? 1.0 : 0.0;
  }
  return std::make_pair(std::move(lower), std::move(upper));
}

}  // namespace

absl::StatusOr<LpRelaxation> SolveLpRelaxation(const BilpModel& model,
                                               std::span<const Fixing> fixings) {
  auto bounds = BoundsFor(model, fixings);
  if (!bounds.ok()) return bounds.status();
  BoundedSimplex lp(model, bounds->first, bounds->second);
  const BoundedSimplex::Result result = lp.SolveFromScratch();
  LpRelaxation out;
  if (result == BoundedSimplex::Result::kInfeasible) return out;
  if (result != BoundedSimplex::Result::kOptimal) {
    return UnexpectedSimplexResult(result);
  }
  out.status = LpStatus::kOptimal;
  out.value = lp.ObjectiveValue();
  out.point = lp.StructuralValues();
  return out;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const BilpModel& model, const BilpOptions& options)
      : model_(model), options_(options),
        start_(std::chrono::steady_clock::now()) {
    integral_objective_ = true;
    for (const double c : model.objective()) {
      if (c != std::trunc(c)) integral_objective_ = false;
    }
  }

  absl::StatusOr<BilpSolution> Run() {
    std::vector<double> lower(model_.num_variables(), 0.0);
    std::vector<double> upper(model_.num_variables(), 1.0);
    BoundedSimplex root(model_, lower, upper);
    const BoundedSimplex::Result result = root.SolveFromScratch();
    if (absl::Status s = Explore(std::move(root), result, {}); !s.ok()) {
      return s;
    }
    BilpSolution solution;
    solution.nodes_explored = nodes_;
    if (incumbent_.has_value()) {
      solution.status = BilpStatus::kOptimal;
      solution.assignment = std::move(incumbent_assignment_);
      solution.objective = *incumbent_;
    }
    return solution;
  }

 private:
  absl::Status CheckLimits() const {
    if (options_.node_limit > 0 && nodes_ > options_.node_limit) {
      return absl::ResourceExhaustedError(absl::StrFormat(
          "branch-and-bound node limit of %d reached", options_.node_limit));
    }
    if (options_.time_limit_s.has_value()) {
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - start_;
      if (elapsed.count() > *options_.time_limit_s) {
        return absl::DeadlineExceededError(absl::StrFormat(
            "branch-and-bound time limit of %gs reached",
            *options_.time_limit_s));
      }
    }
    return absl::OkStatus();
  }

  // No completion of this node can beat the incumbent.
  bool Prunes(double bound) const {
    if (!incumbent_.has_value()) return false;
    const double slack = 1e-9 * std::max(1.0, std::abs(*incumbent_));
    if (integral_objective_) bound = std::ceil(bound - 1e-6);
    return bound >= *incumbent_ - slack;
  }

  // `fixings` is only maintained when warm starting is off.
  absl::Status Explore(BoundedSimplex lp, BoundedSimplex::Result result,
                       std::vector<Fixing> fixings) {
    ++nodes_;
    if (absl::Status s = CheckLimits(); !s.ok()) return s;
    if (result == BoundedSimplex::Result::kIterationLimit && options_.warm_start) {
      // The dual simplex stalled; re-solve this node without the warm start.
      lp = BoundedSimplex(model_, LowerOf(lp), UpperOf(lp));
      result = lp.SolveFromScratch();
    }
    if (result == BoundedSimplex::Result::kInfeasible) return absl::OkStatus();
    if (result != BoundedSimplex::Result::kOptimal) {
      return UnexpectedSimplexResult(result);
    }
    if (Prunes(lp.ObjectiveValue())) return absl::OkStatus();

    const std::vector<double> x = lp.StructuralValues();
    const double tol = options_.integrality_tolerance;
    int branch_var = -1;
    double best_fractionality = tol;
    for (int j = 0; j < static_cast<int>(x.size()); ++j) {
      if (lp.IsFixed(j)) continue;
      const double fractionality = std::min(x[j], 1.0 - x[j]);
      if (fractionality > best_fractionality + 1e-12) {
        best_fractionality = fractionality;
        branch_var = j;
      }
    }
    if (branch_var < 0) {
      std::vector<uint8_t> rounded(x.size());
      for (size_t j = 0; j < x.size(); ++j) rounded[j] = x[j] > 0.5 ? 1 : 0;
      if (model_.IsFeasible(rounded)) {
        const double value = model_.EvaluateObjective(rounded);
        if (!incumbent_.has_value() || value < *incumbent_) {
          incumbent_ = value;
          incumbent_assignment_ = std::move(rounded);
        }
        return absl::OkStatus();
      }
      // Integral within tolerance but the rounded point misses a row: keep
      // splitting on the first free variable.
      for (int j = 0; j < static_cast<int>(x.size()); ++j) {
        if (!lp.IsFixed(j)) {
          branch_var = j;
          break;
        }
      }
      if (branch_var < 0) return absl::OkStatus();
    }

    for (const bool value : {true, false}) {
      const double v = value ? 1.0 : 0.0;
      if (options_.warm_start) {
        BoundedSimplex child = value ? lp : std::move(lp);
        child.Fix(branch_var, v);
        const BoundedSimplex::Result child_result = child.Reoptimize();
        if (absl::Status s = Explore(std::move(child), child_result, {});
            !s.ok()) {
          return s;
        }
      } else {
        std::vector<Fixing> child_fixings = fixings;
        child_fixings.push_back({VarId{branch_var}, value});
        auto bounds = BoundsFor(model_, child_fixings);
        if (!bounds.ok()) return bounds.status();
        BoundedSimplex child(model_, bounds->first, bounds->second);
        const BoundedSimplex::Result child_result = child.SolveFromScratch();
        if (absl::Status s =
                Explore(std::move(child), child_result, std::move(child_fixings));
            !s.ok()) {
          return s;
        }
      }
    }
    return absl::OkStatus();
  }

  std::vector<double> LowerOf(const BoundedSimplex& lp) const {
    std::vector<double> lower(model_.num_variables());
    for (int j = 0; j < model_.num_variables(); ++j) lower[j] = lp.lower_bound(j);
    return lower;
  }
  std::vector<double> UpperOf(const BoundedSimplex& lp) const {
    std::vector<double> upper(model_.num_variables());
    for (int j = 0; j < model_.num_variables(); ++j) upper[j] = lp.upper_bound(j);
    return upper;
  }

  const BilpModel& model_;
  const BilpOptions& options_;
  const std::chrono::steady_clock::time_point start_;
  bool integral_objective_ = true;
  int64_t nodes_ = 0;
  std::optional<double> incumbent_;
  std::vector<uint8_t> incumbent_assignment_;
};

}  // namespace

absl::StatusOr<BilpSolution> SolveBilp(const BilpModel& model,
                                       const BilpOptions& options) {
  return BranchAndBound(model, options).Run();
}

bool IsSearchAborted(const absl::Status& status) {
  return absl::IsResourceExhausted(status) || absl::IsDeadlineExceeded(status);
}

}  // namespace syspart
