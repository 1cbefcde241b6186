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

// partition --model FILE --groups P [options]
//
// Exit status: 0 controllable partitioning found, 2 none exists for this P,
// 3 solver or iteration limit hit, 1 bad input.

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "syspart/engine.h"
#include "syspart/model.h"
#include "syspart/model_io.h"
#include "syspart/oracle.h"

namespace {

constexpr int kExitControllable = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNoControllablePartition = 2;
constexpr int kExitAborted = 3;

std::string OneBased(const std::vector<int>& indices) {
  std::vector<int> shifted;
  for (const int i : indices) shifted.push_back(i + 1);
  return absl::StrCat("{", absl::StrJoin(shifted, ", "), "}");
}

void PrintBinary(const char* name, const syspart::Matrix& m) {
  std::printf("%s =\n", name);
  for (int r = 0; r < m.rows(); ++r) {
    std::printf("  ");
    for (int c = 0; c < m.cols(); ++c) {
      std::printf("%s%d", c ? " " : "", static_cast<int>(m(r, c)));
    }
    std::printf("\n");
  }
}

void PrintSubsystems(const std::vector<syspart::SubsystemVerdict>& verdicts) {
  for (size_t p = 0; p < verdicts.size(); ++p) {
    const syspart::SubsystemVerdict& v = verdicts[p];
    std::printf("  group %zu: states %s inputs %s rank %d N_p %d %s\n", p + 1,
                OneBased(v.states).c_str(), OneBased(v.inputs).c_str(), v.rank,
                v.num_states, v.controllable ? "controllable" : "uncontrollable");
  }
}

// Wraps the oracle's answer in the same report shape the engine produces.
absl::StatusOr<syspart::SolveReport> RunOracle(
    const syspart::StateSpaceModel& model, int groups,
    const syspart::RankTolerance& tolerance) {
  absl::StatusOr<syspart::OracleResult> result =
      syspart::BruteForceOptimum(model, groups, {.rank_tolerance = tolerance});
  if (!result.ok()) return result.status();
  syspart::SolveReport report;
  if (!result->best_controllable.has_value()) {
    report.outcome = syspart::Outcome::kNoControllablePartition;
    return report;
  }
  const syspart::RankedGrouping& best = *result->best_controllable;
  report.outcome = syspart::Outcome::kControllable;
  report.grouping = best.grouping;
  report.objective = best.cost;
  syspart::IterationRecord record{best.cost, best.grouping, {}, 0};
  absl::StatusOr<std::vector<syspart::Subsystem>> subsystems =
      syspart::ExtractPartition(model, best.grouping);
  if (!subsystems.ok()) return subsystems.status();
  for (const syspart::Subsystem& s : *subsystems) {
    absl::StatusOr<int> rank = syspart::ControllabilityRank(s, tolerance);
    if (!rank.ok()) return rank.status();
    record.subsystems.push_back({s.state_indices, s.input_indices, *rank,
                                 s.num_states(), *rank == s.num_states()});
  }
  report.subsystems = record.subsystems;
  report.per_iteration.push_back(std::move(record));
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Least-interacting controllable partitioning of a state-space "
               "model"};
  std::string model_path;
  int groups = 0;
  std::optional<double> rank_tol;
  double zero_tol = 1e-15;
  int64_t max_iterations = 0;
  int64_t node_limit = 0;
  std::optional<double> time_limit_s;
  bool oracle = false;
  std::string report_path;
  bool quiet = false;

  app.add_option("--model", model_path, "JSON model file with fields A and B")
      ->required();
  app.add_option("--groups", groups, "number of groups P")->required();
  app.add_option("--rank-tol", rank_tol,
                 "absolute singular value threshold for controllability "
                 "(default max(rows, cols) * eps * sigma_max)");
  app.add_option("--zero-tol", zero_tol,
                 "entries with magnitude at or below this are structural zeros")
      ->capture_default_str();
  app.add_option("--max-iterations", max_iterations,
                 "BILP solves before giving up (0: number of partitionings)");
  app.add_option("--node-limit", node_limit,
                 "branch-and-bound nodes per solve (0: unlimited)");
  app.add_option("--time-limit-s", time_limit_s,
                 "wall-clock limit for the whole run, in seconds");
  app.add_flag("--oracle", oracle,
               "enumerate every partitioning instead of optimising (small "
               "models only)");
  app.add_option("--report", report_path, "write a JSON report to this path");
  app.add_flag("--quiet", quiet, "print only the final result");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  absl::StatusOr<syspart::StateSpaceModel> model =
      syspart::ReadModelFile(model_path);
  if (!model.ok()) {
    std::fprintf(stderr, "error: %s\n",
                 std::string(model.status().message()).c_str());
    return kExitInputError;
  }
  if (absl::Status s = syspart::ValidateProblem(*model, groups); !s.ok()) {
    std::fprintf(stderr, "error: %s\n", std::string(s.message()).c_str());
    return kExitInputError;
  }

  syspart::RankTolerance tolerance{rank_tol};
  absl::StatusOr<syspart::SolveReport> report;
  if (oracle) {
    report = RunOracle(*model, groups, tolerance);
  } else {
    syspart::PartitionOptions options;
    options.rank_tolerance = tolerance;
    options.formulation.zero_tolerance = zero_tol;
    options.solver.node_limit = node_limit;
    options.solver.time_limit_s = time_limit_s;
    options.max_iterations = max_iterations;
    if (!quiet) {
      options.on_iteration = [n = 0](const syspart::IterationRecord& r) mutable {
        std::printf("iteration %d: objective %.9g, %s, %lld nodes\n", ++n,
                    r.objective,
                    r.AllControllable() ? "all subsystems controllable"
                                        : "uncontrollable subsystem, cutting",
                    static_cast<long long>(r.nodes_explored));
      };
    }
    report = syspart::Partition(*model, groups, options);
  }
  if (!report.ok()) {
    std::fprintf(stderr, "error: %s\n",
                 std::string(report.status().message()).c_str());
    return kExitInputError;
  }

  std::printf("model: %s (N=%d, M=%d), P=%d%s\n",
              model->name().empty() ? model_path.c_str() : model->name().c_str(),
              model->num_states(), model->num_inputs(), groups,
              oracle ? ", brute force" : "");
  std::printf("outcome: %s\n", syspart::OutcomeName(report->outcome).c_str());
  if (report->outcome == syspart::Outcome::kAborted) {
    std::printf("reason: %s\n", report->abort_reason.c_str());
  }
  if (report->grouping.has_value()) {
    std::printf("objective: %.9g\n", report->objective);
  }
  std::printf("iterations: %d\ncuts_added: %d\n", report->iterations,
              report->cuts_added);
  if (report->ties.solves > 0) {
    std::printf("tie_resolution: %d solves, %d cuts, %d controllable optima\n",
                report->ties.solves, report->ties.cuts,
                report->ties.controllable_optima);
  }
  if (report->grouping.has_value()) {
    PrintBinary("alpha", report->grouping->AlphaMatrix());
    PrintBinary("beta", report->grouping->BetaMatrix());
    std::printf("subsystems:\n");
    PrintSubsystems(report->subsystems);
  }
  std::printf("wall_time_s: %.3f\n", report->wall_time_s);

  if (!report_path.empty()) {
    syspart::ReportInputs inputs{model_path, groups,     rank_tol,
                                 zero_tol,   max_iterations, node_limit,
                                 time_limit_s, oracle};
    std::ofstream out(report_path);
    out << syspart::FormatReportJson(*report, *model, inputs) << "\n";
    if (!out) {
      std::fprintf(stderr, "error: cannot write %s\n", report_path.c_str());
      return kExitInputError;
    }
  }

  switch (report->outcome) {
    case syspart::Outcome::kControllable:
      return kExitControllable;
    case syspart::Outcome::kNoControllablePartition:
      return kExitNoControllablePartition;
    case syspart::Outcome::kAborted:
      return kExitAborted;
  }
  return kExitAborted;
}
