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

#ifndef SYSPART_SIMPLEX_H_
#define SYSPART_SIMPLEX_H_

#include <span>
#include <vector>

#include "syspart/bilp.h"

namespace syspart::internal {

// Dense-tableau simplex for
//   min c^T x  s.t.  rows of the model,  lower <= x <= upper,
// with every structural bound finite. Each inequality row gets a slack with
// bounds [0, inf); rows whose slack cannot start basic and feasible get an
// artificial column that phase 1 drives to zero and then pins at [0, 0].
//
// SolveFromScratch runs phase 1 and phase 2 of the primal bounded-variable
// method (Dantzig pricing, Bland's rule after a run of degenerate pivots).
// Fix() then tightens one structural to a single value and Reoptimize()
// restores primal feasibility with the dual simplex, which is how the
// branch-and-bound re-solves child nodes from the parent's final tableau.
class BoundedSimplex {
 public:
  enum class Result { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

  BoundedSimplex(const BilpModel& model, std::span<const double> lower,
                 std::span<const double> upper);

  Result SolveFromScratch();
  void Fix(int var, double value);
  Result Reoptimize();

  // Valid after a kOptimal result.
  double ObjectiveValue() const;
  std::vector<double> StructuralValues() const;
  bool IsFixed(int var) const { return lower_[var] == upper_[var]; }
  double lower_bound(int var) const { return lower_[var]; }
  double upper_bound(int var) const { return upper_[var]; }
  int num_structural() const { return num_structural_; }

 private:
  double& T(int r, int c) { return tableau_[static_cast<size_t>(r) * cols_ + c]; }
  double T(int r, int c) const {
    return tableau_[static_cast<size_t>(r) * cols_ + c];
  }
  double NonbasicValue(int c) const { return at_upper_[c] ? upper_[c] : lower_[c]; }

  void ComputeReducedCosts();
  void Pivot(int row, int col);
  Result PrimalSimplex();
  Result DualSimplex();
  void DriveOutArtificials();

  int num_structural_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> tableau_;  // rows_ x cols_, B^-1 [A | S | R]
  std::vector<double> basic_values_;
  std::vector<int> basis_;      // column basic in each row
  std::vector<int> basic_row_;  // row of each column, -1 if nonbasic
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<bool> at_upper_;  // meaningful for nonbasic columns only
  std::vector<bool> artificial_;
  std::vector<double> structural_cost_;
  std::vector<double> cost_;  // current phase
  std::vector<double> reduced_cost_;
};

}  // namespace syspart::internal

#endif  // SYSPART_SIMPLEX_H_
