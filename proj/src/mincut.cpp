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

#include "mstage/mincut.hpp"

#include <cmath>
#include <string>

namespace mstage {

void MsCutInstance::Validate() const {
  if (n < 2) throw InstanceError("mincut needs at least two vertices");
  if (source < 0 || source >= n || sink < 0 || sink >= n) {
    throw InstanceError("source/sink out of range");
  }
  if (source == sink) throw InstanceError("source and sink must differ");
  if (steps.empty()) throw InstanceError("time horizon must be >= 1");
  for (size_t t = 0; t < steps.size(); ++t) {
    for (const Edge& e : steps[t]) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v) {
        throw InstanceError("bad edge at step " + std::to_string(t));
      }
      if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
        throw InstanceError("edge cost must be finite and >= 0 at step " +
                            std::to_string(t));
      }
    }
  }
  if (transition.size() + 1 != steps.size()) {
    throw InstanceError("transition needs T-1 rows");
  }
  for (const auto& row : transition) {
    if (static_cast<int>(row.size()) != n) {
      throw InstanceError("transition rows need one weight per vertex");
    }
    for (double w : row) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw InstanceError("transition weights must be finite and >= 0");
      }
    }
  }
}

TimeExpandedGraph BuildTimeExpandedGraph(const MsCutInstance& inst) {
  inst.Validate();
  const int n = inst.n;
  const int T = inst.T();
  double finite_sum = 0.0;
  for (const auto& edges : inst.steps) {
    for (const Edge& e : edges) finite_sum += e.weight;
  }
  for (const auto& row : inst.transition) {
    for (double w : row) finite_sum += w;
  }

  TimeExpandedGraph out;
  out.graph = Graph(n * T + 2);
  out.super_source = n * T;
  out.super_sink = n * T + 1;
  out.infinity = InfinitySentinel(finite_sum);
  for (int t = 0; t < T; ++t) {
    for (const Edge& e : inst.steps[t]) {
      out.graph.AddEdge(out.Copy(e.u, t, n), out.Copy(e.v, t, n), e.weight);
    }
  }
  for (int t = 0; t + 1 < T; ++t) {
    for (int v = 0; v < n; ++v) {
      out.graph.AddEdge(out.Copy(v, t, n), out.Copy(v, t + 1, n),
                        inst.transition[t][v]);
    }
  }
  for (int t = 0; t < T; ++t) {
    out.graph.AddEdge(out.super_source, out.Copy(inst.source, t, n), out.infinity);
    out.graph.AddEdge(out.Copy(inst.sink, t, n), out.super_sink, out.infinity);
  }
  return out;
}

CostBreakdown EvaluateCutSchedule(
    const MsCutInstance& inst,
    const std::vector<std::vector<std::uint8_t>>& source_side) {
  CostBreakdown cost;
  for (int t = 0; t < inst.T(); ++t) {
    for (const Edge& e : inst.steps[t]) {
      if (source_side[t][e.u] != source_side[t][e.v]) cost.step += e.weight;
    }
  }
  for (int t = 0; t + 1 < inst.T(); ++t) {
    for (int v = 0; v < inst.n; ++v) {
      if (source_side[t][v] != source_side[t + 1][v]) {
        cost.transition += inst.transition[t][v];
      }
    }
  }
  return cost;
}

RoundedSchedule SolveMsMinCut(const MsCutInstance& inst) {
  TimeExpandedGraph expanded = BuildTimeExpandedGraph(inst);
  CutResult cut =
      MinStCut(expanded.graph, expanded.super_source, expanded.super_sink);
  if (cut.value >= expanded.infinity) {
    throw SolverError("time-expanded min cut crossed a sentinel edge");
  }
  const int n = inst.n;
  RoundedSchedule schedule;
  schedule.decisions.assign(inst.T(), std::vector<std::uint8_t>(n, 0));
  for (int id : cut.source_side) {
    if (id < n * inst.T()) schedule.decisions[id / n][id % n] = 1;
  }
  schedule.cost = EvaluateCutSchedule(inst, schedule.decisions);
  schedule.info.algorithm = "time_expanded_mincut";
  schedule.info.mode = "exact";
  return schedule;
}

}  // namespace mstage
