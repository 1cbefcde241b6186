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

#include "simplex.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace syspart::internal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTolerance = 1e-9;
constexpr double kDualTolerance = 1e-9;
constexpr double kPivotTolerance = 1e-9;
// Phase 1 optimum above this means the rows cannot all be met.
constexpr double kPhaseOneTolerance = 1e-7;
// Consecutive degenerate pivots tolerated before switching to Bland's rule.
constexpr int kDegenerateRunForBland = 50;

}  // namespace

BoundedSimplex::BoundedSimplex(const BilpModel& model,
                               std::span<const double> lower,
                               std::span<const double> upper)
    : num_structural_(model.num_variables()),
      rows_(model.num_constraints()) {
  const std::span<const LinearConstraint> rows = model.constraints();
  const int n = num_structural_;

  // Residual of each row with every structural at its lower bound decides
  // whether the slack can start basic.
  std::vector<double> residual(rows_);
  std::vector<int> artificial_sign(rows_, 0);
  int num_slacks = 0;
  int num_artificials = 0;
  for (int r = 0; r < rows_; ++r) {
    const LinearConstraint& row = rows[r];
    residual[r] = row.rhs - row.Activity(lower);
    switch (row.sense) {
      case Sense::kLessEqual:
        ++num_slacks;
        if (residual[r] < 0) artificial_sign[r] = -1;
        break;
      case Sense::kGreaterEqual:
        ++num_slacks;
        if (residual[r] > 0) artificial_sign[r] = 1;
        break;
      case Sense::kEqual:
        artificial_sign[r] = residual[r] >= 0 ? 1 : -1;
        break;
    }
    if (artificial_sign[r] != 0) ++num_artificials;
  }

  cols_ = n + num_slacks + num_artificials;
  tableau_.assign(static_cast<size_t>(rows_) * cols_, 0.0);
  basic_values_.assign(rows_, 0.0);
  basis_.assign(rows_, -1);
  basic_row_.assign(cols_, -1);
  lower_.assign(cols_, 0.0);
  upper_.assign(cols_, kInf);
  at_upper_.assign(cols_, false);
  artificial_.assign(cols_, false);
  structural_cost_.assign(cols_, 0.0);
  for (int j = 0; j < n; ++j) {
    lower_[j] = lower[j];
    upper_[j] = upper[j];
    structural_cost_[j] = model.objective()[j];
  }

  int next_slack = n;
  int next_artificial = n + num_slacks;
  for (int r = 0; r < rows_; ++r) {
    const LinearConstraint& row = rows[r];
    for (const LinearTerm& t : row.terms) T(r, t.var.value) = t.coefficient;
    int basic = -1;
    double basic_coefficient = 1.0;
    if (row.sense != Sense::kEqual) {
      const double slack_coefficient =
          row.sense == Sense::kLessEqual ? 1.0 : -1.0;
      T(r, next_slack) = slack_coefficient;
      if (artificial_sign[r] == 0) {
        basic = next_slack;
        basic_coefficient = slack_coefficient;
      }
      ++next_slack;
    }
    if (artificial_sign[r] != 0) {
      basic = next_artificial++;
      basic_coefficient = artificial_sign[r];
      artificial_[basic] = true;
      T(r, basic) = basic_coefficient;
    }
    if (basic_coefficient < 0) {
      for (int c = 0; c < cols_; ++c) T(r, c) = -T(r, c);
    }
    basis_[r] = basic;
    basic_row_[basic] = r;
    basic_values_[r] = residual[r] * basic_coefficient;
  }
}

void BoundedSimplex::ComputeReducedCosts() {
  reduced_cost_ = cost_;
  for (int r = 0; r < rows_; ++r) {
    const double cb = cost_[basis_[r]];
    if (cb == 0.0) continue;
    for (int c = 0; c < cols_; ++c) reduced_cost_[c] -= cb * T(r, c);
  }
}

void BoundedSimplex::Pivot(int row, int col) {
  const double pivot = T(row, col);
  std::vector<int> nonzeros;
  nonzeros.reserve(cols_);
  for (int c = 0; c < cols_; ++c) {
    double& v = T(row, c);
    if (v == 0.0) continue;
    v /= pivot;
    nonzeros.push_back(c);
  }
  T(row, col) = 1.0;
  for (int r = 0; r < rows_; ++r) {
    if (r == row) continue;
    const double f = T(r, col);
    if (f == 0.0) continue;
    double* target = &tableau_[static_cast<size_t>(r) * cols_];
    const double* source = &tableau_[static_cast<size_t>(row) * cols_];
    for (const int c : nonzeros) target[c] -= f * source[c];
    target[col] = 0.0;
  }
  const double f = reduced_cost_[col];
  if (f != 0.0) {
    for (const int c : nonzeros) reduced_cost_[c] -= f * T(row, c);
    reduced_cost_[col] = 0.0;
  }
  basic_row_[basis_[row]] = -1;
  basis_[row] = col;
  basic_row_[col] = row;
}

BoundedSimplex::Result BoundedSimplex::PrimalSimplex() {
  const int max_iterations = 1000 + 100 * (rows_ + cols_);
  int degenerate_run = 0;
  for (int iteration = 0; iteration < max_iterations; ++iteration) {
    const bool bland = degenerate_run >= kDegenerateRunForBland;

    int enter = -1;
    double best_score = 0.0;
    for (int c = 0; c < cols_; ++c) {
      if (basic_row_[c] >= 0 || lower_[c] == upper_[c]) continue;
      const double d = reduced_cost_[c];
      double score = 0.0;
      if (!at_upper_[c] && d < -kDualTolerance) {
        score = -d;
      } else if (at_upper_[c] && d > kDualTolerance) {
        score = d;
      } else {
        continue;
      }
      if (bland) {
        enter = c;
        break;
      }
      if (score > best_score) {
        best_score = score;
        enter = c;
      }
    }
    if (enter < 0) return Result::kOptimal;

    // Moving the entering column by t in `direction` changes row r's basic
    // value by -direction * T(r, enter) * t.
    const double direction = at_upper_[enter] ? -1.0 : 1.0;
    double step = upper_[enter] - lower_[enter];
    int leave = -1;
    bool leave_to_upper = false;
    double leave_alpha = 0.0;
    for (int r = 0; r < rows_; ++r) {
      const double alpha = direction * T(r, enter);
      const int b = basis_[r];
      double limit;
      bool to_upper;
      if (alpha > kPivotTolerance) {
        limit = (basic_values_[r] - lower_[b]) / alpha;
        to_upper = false;
      } else if (alpha < -kPivotTolerance && upper_[b] < kInf) {
        limit = (upper_[b] - basic_values_[r]) / -alpha;
        to_upper = true;
      } else {
        continue;
      }
      limit = std::max(limit, 0.0);
      bool take = limit < step - 1e-12;
      if (!take && leave >= 0 && limit <= step + 1e-12) {
        take = bland ? b < basis_[leave]
                     : std::abs(alpha) > std::abs(leave_alpha);
      }
      if (take) {
        step = limit;
        leave = r;
        leave_to_upper = to_upper;
        leave_alpha = alpha;
      }
    }
    if (step == kInf) return Result::kUnbounded;

    degenerate_run = step < 1e-12 ? degenerate_run + 1 : 0;
    for (int r = 0; r < rows_; ++r) {
      basic_values_[r] -= direction * T(r, enter) * step;
    }
    if (leave < 0) {
      at_upper_[enter] = !at_upper_[enter];
      continue;
    }
    const double entering_value = NonbasicValue(enter) + direction * step;
    at_upper_[basis_[leave]] = leave_to_upper;
    Pivot(leave, enter);
    basic_values_[leave] = entering_value;
  }
  return Result::kIterationLimit;
}

BoundedSimplex::Result BoundedSimplex::DualSimplex() {
  const int max_iterations = 1000 + 20 * (rows_ + cols_);
  for (int iteration = 0; iteration < max_iterations; ++iteration) {
    int leave = -1;
    double worst = kPrimalTolerance;
    for (int r = 0; r < rows_; ++r) {
      const int b = basis_[r];
      const double violation = std::max(lower_[b] - basic_values_[r],
                                         basic_values_[r] - upper_[b]);
      if (violation > worst) {
        worst = violation;
        leave = r;
      }
    }
    if (leave < 0) return Result::kOptimal;

    const int leaving = basis_[leave];
    const bool below = basic_values_[leave] < lower_[leaving];
    const double target = below ? lower_[leaving] : upper_[leaving];

    int enter = -1;
    double best_ratio = kInf;
    double best_alpha = 0.0;
    for (int c = 0; c < cols_; ++c) {
      if (basic_row_[c] >= 0 || lower_[c] == upper_[c]) continue;
      const double a = T(leave, c);
      if (std::abs(a) <= kPivotTolerance) continue;
      // The basic value must move toward `target`; a column at its lower
      // bound can only increase and one at its upper bound only decrease.
      const bool increases_basic = at_upper_[c] ? a > 0 : a < 0;
      if (increases_basic != below) continue;
      const double ratio = std::abs(reduced_cost_[c]) / std::abs(a);
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && std::abs(a) > std::abs(best_alpha))) {
        best_ratio = ratio;
        best_alpha = a;
        enter = c;
      }
    }
    if (enter < 0) return Result::kInfeasible;

    const double delta = (basic_values_[leave] - target) / T(leave, enter);
    for (int r = 0; r < rows_; ++r) basic_values_[r] -= T(r, enter) * delta;
    const double entering_value = NonbasicValue(enter) + delta;
    at_upper_[leaving] = !below;
    Pivot(leave, enter);
    basic_values_[leave] = entering_value;
  }
  return Result::kIterationLimit;
}

void BoundedSimplex::DriveOutArtificials() {
  for (int r = 0; r < rows_; ++r) {
    if (!artificial_[basis_[r]]) continue;
    int best = -1;
    double best_abs = 1e-7;
    for (int c = 0; c < cols_; ++c) {
      if (artificial_[c] || basic_row_[c] >= 0) continue;
      if (std::abs(T(r, c)) > best_abs) {
        best_abs = std::abs(T(r, c));
        best = c;
      }
    }
    // A row with no usable column is redundant; its artificial stays basic
    // at zero and is never allowed to move.
    if (best < 0) continue;
    const double value = NonbasicValue(best);
    at_upper_[basis_[r]] = false;
    Pivot(r, best);
    basic_values_[r] = value;
  }
}

BoundedSimplex::Result BoundedSimplex::SolveFromScratch() {
  bool has_artificials = false;
  cost_.assign(cols_, 0.0);
  for (int c = 0; c < cols_; ++c) {
    if (artificial_[c]) {
      cost_[c] = 1.0;
      has_artificials = true;
    }
  }
  if (has_artificials) {
    ComputeReducedCosts();
    const Result phase_one = PrimalSimplex();
    if (phase_one != Result::kOptimal) return phase_one;
    double infeasibility = 0.0;
    for (int r = 0; r < rows_; ++r) {
      if (artificial_[basis_[r]]) infeasibility += basic_values_[r];
    }
    if (infeasibility > kPhaseOneTolerance) return Result::kInfeasible;
    for (int c = 0; c < cols_; ++c) {
      if (artificial_[c]) upper_[c] = 0.0;
    }
    DriveOutArtificials();
    for (int r = 0; r < rows_; ++r) {
      if (artificial_[basis_[r]]) basic_values_[r] = 0.0;
    }
  }
  cost_ = structural_cost_;
  ComputeReducedCosts();
  return PrimalSimplex();
}

void BoundedSimplex::Fix(int var, double value) {
  if (basic_row_[var] < 0) {
    const double delta = value - NonbasicValue(var);
    if (delta != 0.0) {
      for (int r = 0; r < rows_; ++r) basic_values_[r] -= T(r, var) * delta;
    }
    at_upper_[var] = false;
  }
  lower_[var] = value;
  upper_[var] = value;
}

BoundedSimplex::Result BoundedSimplex::Reoptimize() {
  const Result dual = DualSimplex();
  if (dual != Result::kOptimal) return dual;
  // Mops up reduced costs that drifted to the wrong side of zero.
  return PrimalSimplex();
}

double BoundedSimplex::ObjectiveValue() const {
  double value = 0.0;
  const std::vector<double> x = StructuralValues();
  for (int j = 0; j < num_structural_; ++j) value += structural_cost_[j] * x[j];
  return value;
}

std::vector<double> BoundedSimplex::StructuralValues() const {
  std::vector<double> x(num_structural_);
  for (int j = 0; j < num_structural_; ++j) {
    const int r = basic_row_[j];
    x[j] = r >= 0 ? basic_values_[r] : NonbasicValue(j);
  }
  return x;
}

}  // namespace syspart::internal
