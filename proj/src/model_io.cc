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

#include "syspart/model_io.h"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace syspart {
namespace {

using nlohmann::json;

std::pair<int, int> LineAndColumn(std::string_view text, size_t byte) {
  int line = 1;
  int column = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

absl::StatusOr<Matrix> ReadMatrixField(const json& doc, const char* field) {
  if (!doc.contains(field)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("missing field \"%s\"", field));
  }
  const json& rows = doc.at(field);
  if (!rows.is_array() || rows.empty()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "field \"%s\" must be a non-empty array of rows", field));
  }
  std::vector<std::vector<double>> values;
  for (size_t r = 0; r < rows.size(); ++r) {
    const json& row = rows[r];
    if (!row.is_array()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "field \"%s\", row %d: expected an array of numbers", field, r + 1));
    }
    std::vector<double> out;
    for (size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number()) {
        return absl::InvalidArgumentError(
            absl::StrFormat("field \"%s\", row %d, column %d: not a number",
                            field, r + 1, c + 1));
      }
      out.push_back(row[c].get<double>());
    }
    values.push_back(std::move(out));
  }
  absl::StatusOr<Matrix> m = Matrix::FromRows(values);
  if (!m.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("field \"", field, "\": ", m.status().message()));
  }
  return m;
}

json IndexSet(const std::vector<int>& indices) {
  json out = json::array();
  for (const int i : indices) out.push_back(i + 1);
  return out;
}

json BinaryRows(const Matrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(static_cast<int>(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json Subsystems(const std::vector<SubsystemVerdict>& verdicts) {
  json out = json::array();
  for (size_t p = 0; p < verdicts.size(); ++p) {
    const SubsystemVerdict& v = verdicts[p];
    out.push_back({{"group", p + 1},
                   {"states", IndexSet(v.states)},
                   {"inputs", IndexSet(v.inputs)},
                   {"rank", v.rank},
                   {"num_states", v.num_states},
                   {"controllable", v.controllable}});
  }
  return out;
}

template <typename T>
json Optional(const std::optional<T>& v) {
  return v.has_value() ? json(*v) : json(nullptr);
}

}  // namespace

absl::StatusOr<StateSpaceModel> ParseModelJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = LineAndColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    return absl::InvalidArgumentError(absl::StrFormat(
        "malformed model file at line %d, column %d: %s", line, column,
        e.what()));
  }
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("model file must hold a JSON object");
  }
  absl::StatusOr<Matrix> a = ReadMatrixField(doc, "A");
  if (!a.ok()) return a.status();
  absl::StatusOr<Matrix> b = ReadMatrixField(doc, "B");
  if (!b.ok()) return b.status();
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) {
      return absl::InvalidArgumentError("field \"name\" must be a string");
    }
    name = doc["name"].get<std::string>();
  }
  return StateSpaceModel::Create(*std::move(a), *std::move(b), std::move(name));
}

absl::StatusOr<StateSpaceModel> ReadModelFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<StateSpaceModel> model = ParseModelJson(buffer.str());
  if (!model.ok()) {
    return absl::Status(model.status().code(),
                        absl::StrCat(path, ": ", model.status().message()));
  }
  return model;
}

std::string FormatReportJson(const SolveReport& report,
                             const StateSpaceModel& model,
                             const ReportInputs& inputs) {
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["inputs"] = {
      {"model_path", inputs.model_path},
      {"model_name", model.name()},
      {"num_states", model.num_states()},
      {"num_inputs", model.num_inputs()},
      {"num_groups", inputs.num_groups},
      {"rank_tolerance", Optional(inputs.rank_tolerance)},
      {"zero_tolerance", inputs.zero_tolerance},
      {"max_iterations", inputs.max_iterations},
      {"node_limit", inputs.node_limit},
      {"time_limit_s", Optional(inputs.time_limit_s)},
      {"oracle", inputs.oracle},
  };
  doc["outcome"] = OutcomeName(report.outcome);
  if (report.outcome == Outcome::kAborted) {
    doc["abort_reason"] = report.abort_reason;
  }
  if (report.grouping.has_value()) {
    doc["alpha"] = BinaryRows(report.grouping->AlphaMatrix());
    doc["beta"] = BinaryRows(report.grouping->BetaMatrix());
    doc["objective"] = report.objective;
    doc["subsystems"] = Subsystems(report.subsystems);
  } else {
    doc["alpha"] = nullptr;
    doc["beta"] = nullptr;
    doc["objective"] = nullptr;
  }
  doc["iterations"] = report.iterations;
  doc["cuts_added"] = report.cuts_added;
  doc["tie_resolution"] = {
      {"solves", report.ties.solves},
      {"cuts", report.ties.cuts},
      {"controllable_optima", report.ties.controllable_optima}};
  json log = json::array();
  for (size_t i = 0; i < report.per_iteration.size(); ++i) {
    const IterationRecord& r = report.per_iteration[i];
    log.push_back({{"iteration", i + 1},
                   {"objective", r.objective},
                   {"alpha", BinaryRows(r.grouping.AlphaMatrix())},
                   {"beta", BinaryRows(r.grouping.BetaMatrix())},
                   {"all_controllable", r.AllControllable()},
                   {"nodes_explored", r.nodes_explored},
                   {"subsystems", Subsystems(r.subsystems)}});
  }
  doc["per_iteration"] = std::move(log);
  doc["wall_time_s"] = report.wall_time_s;
  return doc.dump(2);
}

absl::StatusOr<GroupingPair> ParseReportGrouping(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed report: ", e.what()));
  }
  if (!doc.is_object() || !doc.contains("alpha") || !doc["alpha"].is_array()) {
    return absl::NotFoundError("report holds no grouping");
  }
  absl::StatusOr<Matrix> alpha = ReadMatrixField(doc, "alpha");
  if (!alpha.ok()) return alpha.status();
  absl::StatusOr<Matrix> beta = ReadMatrixField(doc, "beta");
  if (!beta.ok()) return beta.status();
  return GroupingPair::FromMatrices(*alpha, *beta);
}

}  // namespace syspart
