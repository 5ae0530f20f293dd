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

#ifndef MSTAGE_VERTEX_COVER_HPP_
#define MSTAGE_VERTEX_COVER_HPP_

#include <utility>
#include <vector>

#include "mstage/lp.hpp"
#include "mstage/schedule.hpp"

namespace mstage {

struct MsVcInstance {
  int n = 0;
  std::vector<std::vector<std::pair<int, int>>> edges;  // T edge lists
  std::vector<std::vector<double>> weights;             // T x n
  std::vector<std::vector<double>> transition;          // (T-1) x n

  int T() const { return static_cast<int>(edges.size()); }
  void Validate() const;
};

// Coordinates farther than this from {0, 1/2, 1} abandon the half-integral
// path.
inline constexpr double kHalfIntegralTol = 0.01;

// Coverage rows x_u + x_v >= 1 per step, z >= |x^{t+1} - x^t|.
// Variable layout: x^t_v at t*n + v, then z^t_v at T*n + t*n + v.
LpModel BuildVertexCoverLp(const MsVcInstance& inst);

FractionalSolution SolveVertexCoverLp(const MsVcInstance& inst,
                                      const LpOptions& options = {});

// Snaps a basic LP solution to {0, 1/2, 1} and rounds halves up. When some
// coordinate is not half-integral even after an exact re-solve, falls back
// to two-threshold rounding with (1/2, 1/4) and sets info.path to
// "rs_fallback".
RoundedSchedule SolveMsVertexCover(const MsVcInstance& inst,
                                   const LpOptions& options = {});

CostBreakdown EvaluateCoverSchedule(
    const MsVcInstance& inst,
    const std::vector<std::vector<std::uint8_t>>& cover);

bool IsCover(const MsVcInstance& inst, int t, const std::vector<std::uint8_t>& cover);

}  // namespace mstage

#endif  // MSTAGE_VERTEX_COVER_HPP_
