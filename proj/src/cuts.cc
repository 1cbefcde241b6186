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

#include "syspart/cuts.h"

#include <algorithm>
#include <numeric>

#include "absl/strings/str_format.h"

namespace syspart {

absl::StatusOr<std::vector<LinearConstraint>> ControllabilityCuts(
    const GroupingPair& excluded, const VariableIndex& index) {
  if (excluded.num_groups() != index.num_groups() ||
      excluded.num_states() != index.num_states() ||
      excluded.num_inputs() != index.num_inputs()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "grouping is P=%d, N=%d, M=%d but the program is P=%d, N=%d, M=%d",
        excluded.num_groups(), excluded.num_states(), excluded.num_inputs(),
        index.num_groups(), index.num_states(), index.num_inputs()));
  }
  const int n = excluded.num_states();
  const int m = excluded.num_inputs();
  std::vector<int> permutation(excluded.num_groups());
  std::iota(permutation.begin(), permutation.end(), 0);

  std::vector<LinearConstraint> cuts;
  do {
    LinearConstraint cut{{}, Sense::kLessEqual, static_cast<double>(n + m - 1)};
    cut.terms.reserve(n + m);
    for (int i = 0; i < n; ++i) {
      cut.terms.push_back(
          {index.alpha(permutation[excluded.state_group(i)], i), 1.0});
    }
    for (int k = 0; k < m; ++k) {
      cut.terms.push_back(
          {index.beta(permutation[excluded.input_group(k)], k), 1.0});
    }
    cuts.push_back(std::move(cut));
  } while (std::next_permutation(permutation.begin(), permutation.end()));
  return cuts;
}

}  // namespace syspart
