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


#ifndef MSTAGE_SET_COVER_HPP_
#define MSTAGE_SET_COVER_HPP_

#include <vector>

#include "mstage/lp.hpp"
#include "mstage/schedule.hpp"

namespace mstage {

// Multistage f-set cover. Elements are 0..num_elements-1; sets and the
// ground set may change per step. penalties[i] is paid each time set i
// enters or leaves the solution.
struct MsScInstance {
  int m = 0;
  int num_elements = 0;
  // ground[t]: elements that must be covered at step t. Empty outer vector
  // means every element at every step.
  std::vector<std::vector<int>> ground;
  std::vector<std::vector<std::vector<int>>> sets;  // sets[t][i]: elements
  std::vector<std::vector<double>> weights;         // T x m
  std::vector<double> penalties;                    // m

  int T() const { return static_cast<int>(sets.size()); }
  std::vector<int> Ground(int t) const;
  void Validate() const;
};

class UncoverableElement : public InstanceError {
 public:
  using InstanceError::InstanceError;
};

// Largest number of sets containing one ground element at one step. Throws
// UncoverableElement when some ground element lies in no set.
int Frequency(const MsScInstance& inst);

// One coverage row per (t, element of the step's ground set), transition
// rows z >= |x^{t+1} - x^t|. Layout: x^t_i at t*m + i, z^t_i at T*m + t*m + i.
LpModel BuildSetCoverLp(const MsScInstance& inst);

FractionalSolution SolveSetCoverLp(const MsScInstance& inst,
                                   const LpOptions& options = {});

// Two-threshold rounding per set with alpha = 1/f, beta = 1/(2f).
RoundedSchedule SolveMsSetCover(const MsScInstance& inst,
                                const LpOptions& options = {});

CostBreakdown EvaluateSetCoverSchedule(
    const MsScInstance& inst,
    const std::vector<std::vector<std::uint8_t>>& chosen);

bool CoversStep(const MsScInstance& inst, int t,
                const std::vector<std::uint8_t>& chosen);

}  // namespace mstage

#endif  // MSTAGE_SET_COVER_HPP_
