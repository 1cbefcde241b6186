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

#include "syspart/engine.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_format.h"
#include "syspart/cuts.h"

namespace syspart {

bool IterationRecord::AllControllable() const {
  return std::all_of(subsystems.begin(), subsystems.end(),
                     [](const SubsystemVerdict& s) { return s.controllable; });
}

std::string OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kControllable:
      return "controllable";
    case Outcome::kNoControllablePartition:
      return "no_controllable_partition";
    case Outcome::kAborted:
      return "aborted";
  }
  return "unknown";
}

int64_t CountPartitionings(int num_states, int num_inputs, int num_groups) {
  // Stirling numbers of the second kind, S(n, P).
  const auto stirling = [num_groups](int n) {
    std::vector<long double> row(num_groups + 1, 0.0L);
    row[0] = 1.0L;
    for (int i = 1; i <= n; ++i) {
      for (int k = std::min(i, num_groups); k >= 1; --k) {
        row[k] = k * row[k] + row[k - 1];
      }
      row[0] = 0.0L;
    }
    return row[num_groups];
  };
  long double factorial = 1.0L;
  for (int k = 2; k <= num_groups; ++k) factorial *= k;
  const long double count =
      stirling(num_states) * stirling(num_inputs) * factorial;
  constexpr long double kMax =
      static_cast<long double>(std::numeric_limits<int64_t>::max());
  if (!(count < kMax)) return std::numeric_limits<int64_t>::max();
  return static_cast<int64_t>(std::llround(count));
}

namespace {

absl::StatusOr<IterationRecord> Inspect(const StateSpaceModel& model,
                                        const GroupingPair& grouping,
                                        double objective, int64_t nodes,
                                        const RankTolerance& tolerance) {
  IterationRecord record{objective, Canonicalize(grouping), {}, nodes};
  absl::StatusOr<std::vector<Subsystem>> subsystems =
      ExtractPartition(model, record.grouping);
  if (!subsystems.ok()) return subsystems.status();
  for (const Subsystem& s : *subsystems) {
    absl::StatusOr<int> rank = ControllabilityRank(s, tolerance);
    if (!rank.ok()) return rank.status();
    record.subsystems.push_back({s.state_indices, s.input_indices, *rank,
                                 s.num_states(), *rank == s.num_states()});
  }
  return record;
}

}  // namespace

namespace {

class PartitionLoop {
 public:
  PartitionLoop(const StateSpaceModel& model, int num_groups,
                const PartitionOptions& options)
      : model_(model), num_groups_(num_groups), options_(options),
        start_(std::chrono::steady_clock::now()) {}

  absl::StatusOr<SolveReport> Run() {
    absl::StatusOr<PartitioningProgram> program =
        BuildPartitioningBilp(model_, num_groups_, options_.formulation);
    if (!program.ok()) return program.status();
    if (options_.max_iterations > 0) {
      max_iterations_ = options_.max_iterations;
    } else {
      const int64_t count = CountPartitionings(
          model_.num_states(), model_.num_inputs(), num_groups_);
      max_iterations_ =
          count == std::numeric_limits<int64_t>::max() ? count : count + 1;
    }

    while (true) {
      absl::StatusOr<std::optional<Step>> step = SolveOnce(*program);
      if (!step.ok()) return step.status();
      if (aborted_) return Finish();
      ++report_.iterations;
      if (!step->has_value()) {
        report_.outcome = Outcome::kNoControllablePartition;
        return Finish();
      }
      report_.per_iteration.push_back((*step)->record);
      const IterationRecord& last = report_.per_iteration.back();
      if (options_.on_iteration) options_.on_iteration(last);

      if (last.AllControllable()) {
        if (absl::Status s = CrossCheck(last, (*step)->objective); !s.ok()) {
          return s;
        }
        report_.outcome = Outcome::kControllable;
        report_.grouping = last.grouping;
        report_.subsystems = last.subsystems;
        report_.objective = (*step)->objective;
        report_.ties.controllable_optima = 1;
        if (options_.resolve_ties) {
          if (absl::Status s = ResolveTies(*program); !s.ok()) return s;
        }
        return Finish();
      }
      absl::StatusOr<int> added = AddCuts(*program, last.grouping);
      if (!added.ok()) return added.status();
      report_.cuts_added += *added;
    }
  }

 private:
  struct Step {
    IterationRecord record;
    double objective;
  };

  double Elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

  void Abort(std::string reason) {
    aborted_ = true;
    report_.outcome = Outcome::kAborted;
    report_.abort_reason = std::move(reason);
  }

  SolveReport Finish() {
    report_.wall_time_s = Elapsed();
    return std::move(report_);
  }

  // One BILP solve plus the controllability verdicts of its optimum. An
  // empty result means the program is infeasible, unless aborted_ is set.
  absl::StatusOr<std::optional<Step>> SolveOnce(PartitioningProgram& program) {
    if (report_.iterations + report_.ties.solves >= max_iterations_) {
      Abort(absl::StrFormat("iteration limit of %d reached", max_iterations_));
      return std::nullopt;
    }
    BilpOptions solver = options_.solver;
    if (solver.time_limit_s.has_value()) {
      solver.time_limit_s = std::max(0.0, *solver.time_limit_s - Elapsed());
    }
    absl::StatusOr<BilpSolution> solution = SolveBilp(program.model, solver);
    if (!solution.ok()) {
      if (!IsSearchAborted(solution.status())) return solution.status();
      Abort(std::string(solution.status().message()));
      return std::nullopt;
    }
    if (solution->status == BilpStatus::kInfeasible) return std::nullopt;
    absl::StatusOr<GroupingPair> grouping =
        DecodeSolution(*solution, program.index);
    if (!grouping.ok()) return grouping.status();
    absl::StatusOr<IterationRecord> record =
        Inspect(model_, *grouping, solution->objective,
                solution->nodes_explored, options_.rank_tolerance);
    if (!record.ok()) return record.status();
    return Step{*std::move(record), solution->objective};
  }

  absl::StatusOr<int> AddCuts(PartitioningProgram& program,
                              const GroupingPair& excluded) {
    absl::StatusOr<std::vector<LinearConstraint>> cuts =
        ControllabilityCuts(excluded, program.index);
    if (!cuts.ok()) return cuts.status();
    for (LinearConstraint& cut : *cuts) {
      if (absl::Status s = program.model.AddCut(std::move(cut)); !s.ok()) {
        return s;
      }
    }
    return static_cast<int>(cuts->size());
  }

  absl::Status CrossCheck(const IterationRecord& record, double objective) {
    absl::StatusOr<double> check = InteractionCostBlocks(model_, record.grouping);
    if (!check.ok()) return check.status();
    if (std::abs(*check - objective) > 1e-9 * std::max(1.0, std::abs(*check))) {
      return absl::InternalError(absl::StrFormat(
          "solver objective %.17g disagrees with the interaction metric "
          "%.17g of the decoded grouping",
          objective, *check));
    }
    return absl::OkStatus();
  }

  // Visits every remaining partitioning that costs no more than the optimum.
  absl::Status ResolveTies(const PartitioningProgram& base) {
    PartitioningProgram program = base;
    const double optimum = report_.objective;
    LinearConstraint cap{{}, Sense::kLessEqual,
                         optimum + 1e-9 * std::max(1.0, std::abs(optimum))};
    for (int j = 0; j < program.model.num_variables(); ++j) {
      const double c = program.model.objective()[j];
      if (c != 0.0) cap.terms.push_back({VarId{j}, c});
    }
    if (absl::Status s = program.model.AddConstraint(std::move(cap)); !s.ok()) {
      return s;
    }
    absl::StatusOr<int> added = AddCuts(program, *report_.grouping);
    if (!added.ok()) return added.status();
    report_.ties.cuts += *added;

    while (true) {
      absl::StatusOr<std::optional<Step>> step = SolveOnce(program);
      if (!step.ok()) return step.status();
      if (aborted_) {
        report_.grouping.reset();
        report_.subsystems.clear();
        return absl::OkStatus();
      }
      ++report_.ties.solves;
      if (!step->has_value()) return absl::OkStatus();
      const IterationRecord& record = (*step)->record;
      if (record.AllControllable()) {
        if (absl::Status s = CrossCheck(record, (*step)->objective); !s.ok()) {
          return s;
        }
        ++report_.ties.controllable_optima;
        if (record.grouping < *report_.grouping) {
          report_.grouping = record.grouping;
          report_.subsystems = record.subsystems;
          report_.objective = (*step)->objective;
        }
      }
      added = AddCuts(program, record.grouping);
      if (!added.ok()) return added.status();
      report_.ties.cuts += *added;
    }
  }

  const StateSpaceModel& model_;
  const int num_groups_;
  const PartitionOptions& options_;
  const std::chrono::steady_clock::time_point start_;
  int64_t max_iterations_ = 0;
  bool aborted_ = false;
  SolveReport report_;
};

}  // namespace

absl::StatusOr<SolveReport> Partition(const StateSpaceModel& model,
                                      int num_groups,
                                      const PartitionOptions& options) {
  return PartitionLoop(model, num_groups, options).Run();
}

}  // namespace syspart
