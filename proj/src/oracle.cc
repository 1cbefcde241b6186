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

#include "syspart/oracle.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_format.h"

namespace syspart {
namespace {

// Advances `labels` to the next restricted growth string (labels[0] = 0,
// labels[i] <= 1 + max(labels[0..i-1])). Returns false after the last one.
bool NextRestrictedGrowth(std::vector<int>& labels, int max_label) {
  const int n = static_cast<int>(labels.size());
  std::vector<int> prefix_max(n, 0);
  for (int i = 1; i < n; ++i) {
    prefix_max[i] = std::max(prefix_max[i - 1], labels[i - 1]);
  }
  for (int i = n - 1; i >= 1; --i) {
    if (labels[i] <= prefix_max[i] && labels[i] < max_label) {
      ++labels[i];
      std::fill(labels.begin() + i + 1, labels.end(), 0);
      return true;
    }
  }
  return false;
}

bool NextTuple(std::vector<int>& labels, int base) {
  for (int i = static_cast<int>(labels.size()) - 1; i >= 0; --i) {
    if (++labels[i] < base) return true;
    labels[i] = 0;
  }
  return false;
}

int DistinctCount(const std::vector<int>& labels, int num_groups) {
  std::vector<bool> seen(num_groups, false);
  int distinct = 0;
  for (const int l : labels) {
    if (!seen[l]) {
      seen[l] = true;
      ++distinct;
    }
  }
  return distinct;
}

double DirectCost(const StateSpaceModel& model, const GroupingPair& g) {
  double cost = 0.0;
  for (int i = 0; i < model.num_states(); ++i) {
    for (int j = 0; j < model.num_states(); ++j) {
      if (g.state_group(i) != g.state_group(j)) cost += std::abs(model.a()(i, j));
    }
    for (int k = 0; k < model.num_inputs(); ++k) {
      if (g.state_group(i) != g.input_group(k)) cost += std::abs(model.b()(i, k));
    }
  }
  return cost;
}

// [B_pp, A_pp B_pp, ...] assembled column block by column block.
Matrix KrylovMatrix(const StateSpaceModel& model, const std::vector<int>& states,
                    const std::vector<int>& inputs) {
  const int n = static_cast<int>(states.size());
  const int m = static_cast<int>(inputs.size());
  Matrix out(n, n * m);
  std::vector<double> block(n * m);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m; ++c) block[r * m + c] = model.b()(states[r], inputs[c]);
  }
  for (int power = 0; power < n; ++power) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < m; ++c) out(r, power * m + c) = block[r * m + c];
    }
    std::vector<double> next(n * m, 0.0);
    for (int r = 0; r < n; ++r) {
      for (int t = 0; t < n; ++t) {
        const double a = model.a()(states[r], states[t]);
        for (int c = 0; c < m; ++c) next[r * m + c] += a * block[t * m + c];
      }
    }
    block = std::move(next);
  }
  return out;
}

}  // namespace

absl::Status EnumerateGroupings(
    int num_states, int num_inputs, int num_groups,
    const std::function<void(const GroupingPair&)>& visit) {
  if (num_groups < 2 || num_groups > std::min(num_states, num_inputs)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "cannot enumerate P = %d groups for N = %d, M = %d", num_groups,
        num_states, num_inputs));
  }
  std::vector<int> states(num_states, 0);
  do {
    if (DistinctCount(states, num_groups) != num_groups) continue;
    std::vector<int> inputs(num_inputs, 0);
    do {
      if (DistinctCount(inputs, num_groups) != num_groups) continue;
      absl::StatusOr<GroupingPair> g =
          GroupingPair::FromLabels(num_groups, states, inputs);
      if (!g.ok()) return g.status();
      visit(*g);
    } while (NextTuple(inputs, num_groups));
  } while (NextRestrictedGrowth(states, num_groups - 1));
  return absl::OkStatus();
}

absl::StatusOr<OracleResult> BruteForceOptimum(const StateSpaceModel& model,
                                               int num_groups,
                                               const OracleOptions& options) {
  if (model.num_states() > options.max_dimension ||
      model.num_inputs() > options.max_dimension) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "brute force is limited to N, M <= %d (got N = %d, M = %d); it "
        "enumerates every partitioning and is meant for desk-sized models",
        options.max_dimension, model.num_states(), model.num_inputs()));
  }
  const bool exact = model.a().IsIntegerValued() && model.b().IsIntegerValued();
  OracleResult result;
  absl::Status failure;
  absl::Status status = EnumerateGroupings(
      model.num_states(), model.num_inputs(), num_groups,
      [&](const GroupingPair& g) {
        if (!failure.ok()) return;
        bool controllable = true;
        for (int p = 0; p < num_groups && controllable; ++p) {
          const std::vector<int> states = g.StatesOf(p);
          const Matrix krylov = KrylovMatrix(model, states, g.InputsOf(p));
          absl::StatusOr<int> rank =
              exact ? ExactRank(krylov)
                    : NumericalRank(krylov, options.rank_tolerance);
          if (!rank.ok()) {
            failure = rank.status();
            return;
          }
          controllable = *rank == static_cast<int>(states.size());
        }
        result.ranking.push_back({DirectCost(model, g), controllable, g});
      });
  if (!status.ok()) return status;
  if (!failure.ok()) return failure;
  std::stable_sort(result.ranking.begin(), result.ranking.end(),
                   [](const RankedGrouping& x, const RankedGrouping& y) {
                     return x.cost < y.cost;
                   });
  for (const RankedGrouping& r : result.ranking) {
    if (r.controllable) {
      result.best_controllable = r;
      break;
    }
  }
  return result;
}

CostCensus CensusAround(const OracleResult& result, double cost,
                        double tolerance) {
  CostCensus census;
  for (const RankedGrouping& r : result.ranking) {
    if (r.cost < cost - tolerance) {
      if (!r.controllable) ++census.uncontrollable_below;
    } else if (r.cost <= cost + tolerance) {
      ++(r.controllable ? census.controllable_tied : census.uncontrollable_tied);
    }
  }
  return census;
}

}  // namespace syspart
