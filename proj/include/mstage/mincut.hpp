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

#ifndef MSTAGE_MINCUT_HPP_
#define MSTAGE_MINCUT_HPP_

#include <vector>

#include "mstage/graph.hpp"
#include "mstage/schedule.hpp"

namespace mstage {

// Multistage s-p cut. The vertex set is shared by all steps; edges and
// their costs change per step. transition[t][v] is paid when v switches
// sides between steps t and t+1.
struct MsCutInstance {
  int n = 0;
  int source = 0;
  int sink = 1;
  std::vector<std::vector<Edge>> steps;          // T edge lists
  std::vector<std::vector<double>> transition;   // (T-1) x n

  int T() const { return static_cast<int>(steps.size()); }
  void Validate() const;
};

struct TimeExpandedGraph {
  Graph graph;
  int super_source = 0;
  int super_sink = 0;
  double infinity = 0.0;  // weight used on the terminal attachments

  // Vertex id of copy (v, t).
  int Copy(int v, int t, int n) const { return t * n + v; }
};

// T copies of V, intra-step edges, (v^t, v^{t+1}) edges with the
// transition weight, and sentinel edges tying every copy of the source to
// super_source and every copy of the sink to super_sink.
TimeExpandedGraph BuildTimeExpandedGraph(const MsCutInstance& inst);

// Exact optimum via one min cut on the time-expanded graph.
RoundedSchedule SolveMsMinCut(const MsCutInstance& inst);

// Cut plus transition cost of an arbitrary side assignment.
CostBreakdown EvaluateCutSchedule(
    const MsCutInstance& inst,
    const std::vector<std::vector<std::uint8_t>>& source_side);

}  // namespace mstage

#endif  // MSTAGE_MINCUT_HPP_
