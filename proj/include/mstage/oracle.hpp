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


#ifndef MSTAGE_ORACLE_HPP_
#define MSTAGE_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "mstage/graph.hpp"
#include "mstage/mincut.hpp"
#include "mstage/pcst.hpp"
#include "mstage/pctsp.hpp"
#include "mstage/schedule.hpp"
#include "mstage/set_cover.hpp"
#include "mstage/vertex_cover.hpp"

namespace mstage {

inline constexpr int kOracleMaxItems = 7;  // vertices or sets
inline constexpr int kOracleMaxSteps = 4;
inline constexpr int kExactTspMaxSubset = 10;

class InstanceTooLarge : public InstanceError {
 public:
  using InstanceError::InstanceError;
};

// Feasible decision vectors per step and their exact step cost.
struct StateSpace {
  std::vector<std::vector<std::vector<std::uint8_t>>> states;  // [t][k]
  std::vector<std::vector<CostBreakdown>> cost;                // [t][k]
};

// Optimal path through the state space; transition[t][i] is paid when
// coordinate i differs between steps t and t+1.
RoundedSchedule MinimumCostSchedule(const StateSpace& space,
                                    const std::vector<std::vector<double>>& transition);

// Exact optimum by enumeration of per-step decisions and a DP over time.
// Prize-collecting decisions are the connected/visited vertex sets; their
// step cost is the exact Steiner tree or tour through the set plus the
// penalties outside it. Trees and tours are not materialized.
RoundedSchedule BruteForceSchedule(const MsCutInstance& inst);
RoundedSchedule BruteForceSchedule(const MsVcInstance& inst);
RoundedSchedule BruteForceSchedule(const MsScInstance& inst);
RoundedSchedule BruteForceSchedule(const MsPcstInstance& inst);
RoundedSchedule BruteForceSchedule(const MsPctspInstance& inst);

// Dreyfus-Wagner over the shortest-path closure of `costs`.
double ExactSteiner(const CostMatrix& costs, int root, const std::vector<int>& terminals);

// Cheapest edge subset of the complete graph joining terminals and root.
double SteinerByEdgeSubsets(const CostMatrix& costs, int root,
                            const std::vector<int>& terminals);

// Held-Karp over the subset; the subset must contain the depot.
double ExactTsp(const CostMatrix& costs, const std::vector<int>& subset, int depot);

// Every ordering of the non-depot vertices.
double TspByPermutations(const CostMatrix& costs, const std::vector<int>& subset,
                         int depot);

}  // namespace mstage

#endif  // MSTAGE_ORACLE_HPP_
