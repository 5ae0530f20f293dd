// Copyright 2026 The mstage Authors.
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


#ifndef MSTAGE_SRC_CHECKS_HPP_
#define MSTAGE_SRC_CHECKS_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "mstage/graph.hpp"
#include "mstage/schedule.hpp"

namespace mstage::internal {

inline void CheckCostMatrix(const CostMatrix& c, int n, int t) {
  if (c.size() != n) {
    throw InstanceError("cost matrix at step " + std::to_string(t) + " must be n x n");
  }
  for (int u = 0; u < n; ++u) {
    if (c(u, u) != 0.0) throw InstanceError("cost matrix diagonal must be 0");
    for (int v = 0; v < n; ++v) {
      if (!(c(u, v) >= 0.0) || !std::isfinite(c(u, v))) {
        throw InstanceError("edge costs must be finite and >= 0 at step " +
                            std::to_string(t));
      }
      if (c(u, v) != c(v, u)) throw InstanceError("cost matrix must be symmetric");
    }
  }
}

inline void CheckNonNegative(const std::vector<double>& row, int n, const char* field) {
  if (static_cast<int>(row.size()) != n) {
    throw InstanceError(std::string(field) + " needs one entry per vertex");
  }
  for (double p : row) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InstanceError(std::string(field) + " must be finite and >= 0");
    }
  }
}

}  // namespace mstage::internal

#endif  // MSTAGE_SRC_CHECKS_HPP_
