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

// Model files and machine-readable solve reports, both JSON.
//
// Model file:
//   {"name": "f100", "A": [[...], ...], "B": [[...], ...]}
// with A given as N rows of N numbers and B as N rows of M numbers.
//
// Report file: see FormatReportJson. Index sets in reports are 1-based.

#ifndef SYSPART_MODEL_IO_H_
#define SYSPART_MODEL_IO_H_

#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "syspart/engine.h"
#include "syspart/model.h"

namespace syspart {

inline constexpr int kReportSchemaVersion = 1;

absl::StatusOr<StateSpaceModel> ParseModelJson(std::string_view text);
absl::StatusOr<StateSpaceModel> ReadModelFile(const std::string& path);

// Echoed into the report so a run can be reproduced from it.
struct ReportInputs {
  std::string model_path;
  int num_groups = 0;
  std::optional<double> rank_tolerance;
  double zero_tolerance = 1e-15;
  int64_t max_iterations = 0;
  int64_t node_limit = 0;
  std::optional<double> time_limit_s;
  bool oracle = false;
};

std::string FormatReportJson(const SolveReport& report,
                             const StateSpaceModel& model,
                             const ReportInputs& inputs);

// The final grouping stored in a report written by FormatReportJson.
absl::StatusOr<GroupingPair> ParseReportGrouping(std::string_view text);

}  // namespace syspart

#endif  // SYSPART_MODEL_IO_H_
