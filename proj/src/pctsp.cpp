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


#include "mstage/pctsp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "checks.hpp"
#include "complete_edges.hpp"

namespace mstage {

using internal::CheckCostMatrix;
using internal::CheckNonNegative;
using internal::CompleteEdges;

void MsPctspInstance::Validate() const {
  if (n < 1) throw InstanceError("pctsp needs at least one vertex");
  if (depot < 0 || depot >= n) throw InstanceError("depot out of range");
  if (costs.empty()) throw InstanceError("time horizon must be >= 1");
  for (int t = 0; t < T(); ++t) {
    CheckCostMatrix(costs[t], n, t);
    if (!CheckMetric(costs[t])) {
      throw InstanceError("costs at step " + std::to_string(t) +
                          " violate the triangle inequality");
    }
  }
  if (static_cast<int>(penalties.size()) != T()) {
    throw InstanceError("penalties need T rows");
  }
  for (const auto& row : penalties) CheckNonNegative(row, n, "penalties");
  CheckNonNegative(w, n, "w");
}

AugmentedStepGraph BuildAugmentedStepGraph(const CostMatrix& costs, int depot) {
  const int n = costs.size();
  AugmentedStepGraph g;
  g.costs = CostMatrix(n + 1);
  g.depot = depot;
  g.dummy = n;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) g.costs(u, v) = costs(u, v);
    g.costs.Set(u, n, u == depot ? 0.0 : costs(u, depot));
  }
  return g;
}

namespace {

PctspLpLayout LayoutOf(const MsPctspInstance& inst) {
  return {inst.n, inst.depot, inst.T(), (inst.n + 1) * inst.n / 2};
}

// sum_{delta(S)} x^t - 2 s^t_v >= 0, or >= 2 for the depot.
LpRow CutRow(const MsPctspInstance& inst, const PctspLpLayout& layout,
             const CompleteEdges& edges, int t, int v,
             const std::vector<char>& in_set) {
  LpRow row;
  row.relation = Relation::kGreaterEqual;
  for (int k : edges.Crossing(in_set)) row.terms.push_back({layout.X(t, k), 1.0});
  if (v == inst.depot) {
    row.rhs = 2.0;
  } else {
    row.terms.push_back({layout.S(t, v), -2.0});
    row.rhs = 0.0;
  }
  return row;
}

}  // namespace

LpModel BuildPctspBaseLp(const MsPctspInstance& inst) {
  inst.Validate();
  const PctspLpLayout layout = LayoutOf(inst);
  const CompleteEdges edges(inst.n + 1);
  const int T = inst.T();
  const int dummy = inst.n;
  LpModel model(layout.Size());
  model.var_names.resize(layout.Size());
  for (int t = 0; t < T; ++t) {
    const AugmentedStepGraph g = BuildAugmentedStepGraph(inst.costs[t], inst.depot);
    for (int k = 0; k < edges.size(); ++k) {
      auto [u, v] = edges[k];
      const int j = layout.X(t, k);
      model.objective[j] = g.costs(u, v);
      if (u == inst.depot && v == dummy) model.upper[j] = 2.0;
      model.var_names[j] = "x_" + std::to_string(t) + "_" + std::to_string(u) + "_" +
                           (v == dummy ? std::string("d") : std::to_string(v));
    }
    for (int v = 0; v < inst.n; ++v) {
      if (v == inst.depot) continue;
      model.objective[layout.S(t, v)] = -inst.penalties[t][v];
      model.objective_offset += inst.penalties[t][v];
      model.var_names[layout.S(t, v)] = "s_" + std::to_string(t) + "_" + std::to_string(v);
      if (t + 1 < T) {
        model.objective[layout.Z(t, v)] = inst.w[v];
        model.var_names[layout.Z(t, v)] =
            "z_" + std::to_string(t) + "_" + std::to_string(v);
      }
    }
  }
  for (int t = 0; t < T; ++t) {
    for (int v = 0; v <= inst.n; ++v) {
      LpRow row;
      row.relation = Relation::kEqual;
      for (int u = 0; u <= inst.n; ++u) {
        if (u != v) row.terms.push_back({layout.X(t, edges.Index(u, v)), 1.0});
      }
      if (v == inst.depot || v == dummy) {
        row.rhs = 2.0;
      } else {
        row.terms.push_back({layout.S(t, v), -2.0});
        row.rhs = 0.0;
      }
      model.AddRow(std::move(row));
    }
  }
  for (int t = 0; t + 1 < T; ++t) {
    for (int v = 0; v < inst.n; ++v) {
      if (v == inst.depot) continue;
      const int z = layout.Z(t, v), s0 = layout.S(t, v), s1 = layout.S(t + 1, v);
      model.AddRow({{{z, 1.0}, {s0, -1.0}, {s1, 1.0}}, Relation::kGreaterEqual, 0.0});
      model.AddRow({{{z, 1.0}, {s0, 1.0}, {s1, -1.0}}, Relation::kGreaterEqual, 0.0});
    }
  }
  return model;
}

LpModel BuildPctspFullLp(const MsPctspInstance& inst) {
  if (inst.n > 10) throw InstanceError("explicit cut enumeration limited to n <= 10");
  LpModel model = BuildPctspBaseLp(inst);
  const PctspLpLayout layout = LayoutOf(inst);
  const CompleteEdges edges(inst.n + 1);
  const int n = inst.n;
  for (int t = 0; t < inst.T(); ++t) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (std::popcount(mask) == 1) continue;  // implied by the degree rows
      std::vector<char> in_set(n + 1, 0);
      for (int v = 0; v < n; ++v) in_set[v] = (mask >> v) & 1u;
      for (int v = 0; v < n; ++v) {
        if (in_set[v]) model.AddRow(CutRow(inst, layout, edges, t, v, in_set));
      }
    }
  }
  return model;
}

namespace {

Graph SupportGraph(const CompleteEdges& edges, int vertices,
                   std::span<const double> x, double scale) {
  Graph support(vertices);
  for (int k = 0; k < edges.size(); ++k) {
    if (x[k] > 0.0) support.AddEdge(edges[k].first, edges[k].second, scale * x[k]);
  }
  return support;
}

FractionalSolution Unpack(const MsPctspInstance& inst, const LpSolution& sol) {
  const PctspLpLayout layout = LayoutOf(inst);
  const CompleteEdges edges(inst.n + 1);
  const int T = inst.T();
  FractionalSolution frac;
  frac.lp_value = sol.objective_value;
  frac.rounds = sol.rounds;
  frac.certified = sol.certified;
  frac.x.assign(T, std::vector<double>(edges.size()));
  frac.s.assign(T, std::vector<double>(inst.n, 1.0));
  frac.z.assign(std::max(0, T - 1), std::vector<double>(inst.n, 0.0));
  frac.step_parts.assign(T, 0.0);
  for (int t = 0; t < T; ++t) {
    const AugmentedStepGraph g = BuildAugmentedStepGraph(inst.costs[t], inst.depot);
    for (int k = 0; k < edges.size(); ++k) {
      frac.x[t][k] = sol.values[layout.X(t, k)];
      frac.step_parts[t] += g.costs(edges[k].first, edges[k].second) * frac.x[t][k];
    }
    frac.parts.step += frac.step_parts[t];
    for (int v = 0; v < inst.n; ++v) {
      if (v == inst.depot) continue;
      frac.s[t][v] = sol.values[layout.S(t, v)];
      frac.parts.penalty += inst.penalties[t][v] * (1.0 - frac.s[t][v]);
      if (t + 1 < T) {
        frac.z[t][v] = sol.values[layout.Z(t, v)];
        frac.parts.transition += inst.w[v] * frac.z[t][v];
      }
    }
  }
  return frac;
}

double Clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

FractionalSolution PctspLpSolve(const MsPctspInstance& inst,
                                const PctspLpOptions& options) {
  const LpModel base = BuildPctspBaseLp(inst);
  const PctspLpLayout layout = LayoutOf(inst);
  const CompleteEdges edges(inst.n + 1);
  const double tol = options.lp.separation_tol;
  const int dummy = inst.n;

  SeparationOracle oracle = [&](std::span<const double> values) {
    std::vector<Cut> cuts;
    for (int t = 0; t < inst.T(); ++t) {
      Graph support =
          SupportGraph(edges, inst.n + 1, values.subspan(layout.X(t, 0), edges.size()), 1.0);
      for (int v = 0; v < inst.n; ++v) {
        const double need = v == inst.depot ? 2.0 : 2.0 * values[layout.S(t, v)];
        if (need <= tol) continue;
        CutResult cut = MinStCut(support, v, dummy);
        if (cut.value >= need - tol) continue;
        std::vector<char> in_set(inst.n + 1, 0);
        for (int u : cut.source_side) in_set[u] = 1;
        LpRow row = CutRow(inst, layout, edges, t, v, in_set);
        const double violation = row.Violation(values);
        cuts.push_back({std::move(row), violation});
      }
    }
    return cuts;
  };

  LpSolution sol = SolveWithSeparation(base, oracle, options.max_rounds, options.lp);
  if (sol.status != LpStatus::kOptimal) {
    throw SolverError(std::string("pctsp LP is ") + ToString(sol.status));
  }
  return Unpack(inst, sol);
}

std::vector<double> DummyCutValues(const MsPctspInstance& inst,
                                   const FractionalSolution& frac, int t,
                                   double scale) {
  const CompleteEdges edges(inst.n + 1);
  Graph support = SupportGraph(edges, inst.n + 1, frac.x[t], scale);
  std::vector<double> values(inst.n);
  for (int v = 0; v < inst.n; ++v) values[v] = MinStCut(support, v, inst.n).value;
  return values;
}

Tour ChristofidesTour(const CostMatrix& costs, const std::vector<int>& subset,
                      int depot, MatchingMode mode) {
  if (std::find(subset.begin(), subset.end(), depot) == subset.end()) {
    throw GraphError("tour subset must contain the depot");
  }
  if (subset.size() == 1) return Tour{{depot, depot}, 0.0};
  std::vector<Edge> multigraph = MinimumSpanningTree(costs, subset);
  std::vector<int> degree(costs.size(), 0);
  for (const Edge& e : multigraph) {
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<int> odd;
  for (int v : subset) {
    if (degree[v] % 2 == 1) odd.push_back(v);
  }
  std::vector<Edge> matching = MinWeightPerfectMatching(costs, odd, mode);
  multigraph.insert(multigraph.end(), matching.begin(), matching.end());
  return EulerianShortcutTour(multigraph, depot, costs);
}

CostBreakdown EvaluatePctspSchedule(
    const MsPctspInstance& inst,
    const std::vector<std::vector<std::uint8_t>>& visited,
    const std::vector<Tour>& tours) {
  CostBreakdown cost;
  for (int t = 0; t < inst.T(); ++t) {
    cost.step += TourLength(tours[t].sequence, inst.costs[t]);
    for (int v = 0; v < inst.n; ++v) {
      if (v != inst.depot && !visited[t][v]) cost.penalty += inst.penalties[t][v];
    }
  }
  for (int t = 0; t + 1 < inst.T(); ++t) {
    for (int v = 0; v < inst.n; ++v) {
      if (v != inst.depot && visited[t][v] != visited[t + 1][v]) cost.transition += inst.w[v];
    }
  }
  return cost;
}

RoundedSchedule RoundPctsp(const MsPctspInstance& inst,
                           const FractionalSolution& frac,
                           const RoundingParams& params, MatchingMode matching) {
  const int T = inst.T();
  RoundedSchedule schedule;
  schedule.decisions.assign(T, std::vector<std::uint8_t>(inst.n, 0));
  std::vector<double> series(T);
  for (int v = 0; v < inst.n; ++v) {
    if (v == inst.depot) {
      for (int t = 0; t < T; ++t) schedule.decisions[t][v] = 1;
      continue;
    }
    for (int t = 0; t < T; ++t) series[t] = Clamp01(frac.s[t][v]);
    std::vector<std::uint8_t> y = TwoThresholdRound(series, params);
    for (int t = 0; t < T; ++t) schedule.decisions[t][v] = y[t];
  }
  for (int t = 0; t < T; ++t) {
    std::vector<int> subset;
    for (int v = 0; v < inst.n; ++v) {
      if (schedule.decisions[t][v]) subset.push_back(v);
    }
    schedule.tours.push_back(ChristofidesTour(inst.costs[t], subset, inst.depot, matching));
  }
  schedule.cost = EvaluatePctspSchedule(inst, schedule.decisions, schedule.tours);
  schedule.info.alpha = params.alpha;
  schedule.info.beta = params.beta;
  return schedule;
}

RoundedSchedule SolveMsPctsp(const MsPctspInstance& inst, RoundingMode mode,
                             MatchingMode matching, const PctspLpOptions& options,
                             FractionalSolution* frac_out) {
  FractionalSolution frac = PctspLpSolve(inst, options);
  RoundedSchedule best;
  if (mode == RoundingMode::kFixed) {
    best = RoundPctsp(inst, frac, {5.0 / 7.0, 3.0 / 7.0}, matching);
  } else {
    const DerandomizationConfig cfg = DerandomizationConfig::TravelingSalesman();
    std::vector<double> values;
    for (int t = 0; t < inst.T(); ++t) {
      for (int v = 0; v < inst.n; ++v) {
        if (v != inst.depot) values.push_back(Clamp01(frac.s[t][v]));
      }
    }
    bool first = true;
    for (double alpha : CandidateAlphas(values, cfg, CandidateRule::kComplete)) {
      RoundedSchedule candidate =
          RoundPctsp(inst, frac, {alpha, cfg.kappa * alpha}, matching);
      if (first || candidate.cost.Total() < best.cost.Total()) {
        best = std::move(candidate);
        first = false;
      }
    }
    best.info.gamma = cfg.gamma;
  }
  best.info.algorithm = mode == RoundingMode::kFixed ? "rs_mpctsp" : "i_rs_mpctsp";
  best.info.mode = ToString(mode);
  best.info.matching = matching == MatchingMode::kExact ? "exact" : "greedy";
  if (matching == MatchingMode::kGreedy) best.info.flags.push_back("greedy_matching_no_certificate");
  best.info.lp_value = frac.lp_value;
  best.info.lp_rounds = frac.rounds;
  best.info.lp_certified = frac.certified;
  if (!frac.certified) best.info.flags.push_back("lp_not_certified");
  if (frac_out) *frac_out = std::move(frac);
  return best;
}

}  // namespace mstage
