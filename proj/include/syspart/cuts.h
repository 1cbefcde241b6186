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

#ifndef SYSPART_CUTS_H_
#define SYSPART_CUTS_H_

#include <vector>

#include "absl/status/statusor.h"
#include "syspart/bilp.h"
#include "syspart/formulation.h"
#include "syspart/model.h"

namespace syspart {

// Cuts that remove one partitioning from the program. For every permutation
// pi of the group labels (P! of them, identity first, then lexicographic) the
// cut reads
//   sum_{i in group p} alpha_{pi(p), i} + sum_{k in group p} beta_{pi(p), k}
//     <= N + M - 1,
// i.e. trace(alpha_nc^T alpha) + trace(beta_nc^T beta) <= N + M - 1 for the
// relabelled copy of `excluded`. The left-hand side reaches N + M only at
// that exact labelling, so together the family removes every representation
// of the partitioning and nothing else. Rows of alpha and beta are always
// permuted together.
absl::StatusOr<std::vector<LinearConstraint>> ControllabilityCuts(
    const GroupingPair& excluded, const VariableIndex& index);

}  // namespace syspart

#endif  // SYSPART_CUTS_H_
