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


#include "mstage/pcst.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "checks.hpp"
#include "complete_edges.hpp"

namespace mstage {

using internal::CheckCostMatrix;
using internal::CheckNonNegative;
using internal::CompleteEdges;

const char* ToString(RoundingMode mode) {
  return mode == RoundingMode::kFixed ? "fixed" : "derandomized";
}

namespace {

double Clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

void MsPcstInstance::Validate() const {
  if (n < 1) throw InstanceError("pcst needs at least one vertex");
  if (root < 0 || root >= n) throw InstanceError("root out of range");
  if (costs.empty()) throw InstanceError("time horizon must be >= 1");
  for (int t = 0; t < T(); ++t) CheckCostMatrix(costs[t], n, t);
  if (static_cast<int>(penalties.size()) != T()) {
    throw InstanceError("penalties need T rows");
  }
  for (const auto& row : penalties) CheckNonNegative(row, n, "penalties");
  CheckNonNegative(w, n, "w");
}

double MissingEdgeCost(const CostMatrix& finite_costs,
                       const std::vector<double>& penalties) {
  double total = 1.0;
  const int n = finite_costs.size();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (std::isfinite(finite_costs(u, v))) total += finite_costs(u, v);
    }
  }
  for (double p : penalties) total += p;
  return total;
}

double GwResult::Cost() const {
  double sum = 0.0;
  for (const Edge& e : tree) sum += e.weight;
  return sum;
}

GwResult GwSteinerTree(const CostMatrix& costs, int root,
                       const std::vector<int>& terminals) {
  const int n = costs.size();
  GwResult result;
  std::vector<char> is_terminal(n, 0);
  for (int v : terminals) {
    if (v < 0 || v >= n) throw GraphError("terminal out of range");
    if (v != root) is_terminal[v] = 1;
  }

  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::vector<std::vector<int>> members(n);
  std::vector<char> has_terminal(n), has_root(n);
  std::vector<double> comp_y(n, 0.0);
  for (int v = 0; v < n; ++v) {
    members[v] = {v};
    has_terminal[v] = is_terminal[v];
    has_root[v] = v == root;
  }
  auto active = [&](int c) { return has_terminal[c] && !has_root[c]; };
  std::vector<double> d(n, 0.0);  // dual load on each vertex
  std::vector<Edge> forest;

  for (;;) {
    bool any_active = false;
    for (int c = 0; c < n; ++c) {
      if (!members[c].empty() && active(c)) any_active = true;
    }
    if (!any_active) break;

    double eps = std::numeric_limits<double>::infinity();
    int best_u = -1, best_v = -1;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (comp[u] == comp[v]) continue;
        const int growing = active(comp[u]) + active(comp[v]);
        if (growing == 0) continue;
        const double slack = std::max(0.0, costs(u, v) - d[u] - d[v]);
        const double e = slack / growing;
        if (e < eps) {
          eps = e;
          best_u = u;
          best_v = v;
        }
      }
    }
    if (best_u < 0) throw GraphError("active component has no outgoing edge");

    for (int c = 0; c < n; ++c) {
      if (members[c].empty() || !active(c)) continue;
      comp_y[c] += eps;
      for (int v : members[c]) d[v] += eps;
    }
    forest.push_back({best_u, best_v, costs(best_u, best_v)});

    int keep = comp[best_u], gone = comp[best_v];
    if (keep > gone) std::swap(keep, gone);
    for (int c : {keep, gone}) {
      if (comp_y[c] > 0.0) result.moats.push_back({members[c], comp_y[c]});
      comp_y[c] = 0.0;
    }
    for (int v : members[gone]) comp[v] = keep;
    members[keep].insert(members[keep].end(), members[gone].begin(),
                         members[gone].end());
    std::sort(members[keep].begin(), members[keep].end());
    members[gone].clear();
    has_terminal[keep] = has_terminal[keep] || has_terminal[gone];
    has_root[keep] = has_root[keep] || has_root[gone];
  }
  for (int c = 0; c < n; ++c) {
    if (!members[c].empty() && comp_y[c] > 0.0) {
      result.moats.push_back({members[c], comp_y[c]});
    }
  }
  for (const Moat& m : result.moats) result.dual_value += m.y;

  // Prune leaves that are neither terminals nor the root.
  std::vector<int> degree(n, 0);
  std::vector<char> alive(forest.size(), 1);
  for (const Edge& e : forest) {
    ++degree[e.u];
    ++degree[e.v];
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t k = 0; k < forest.size(); ++k) {
      if (!alive[k]) continue;
      const Edge& e = forest[k];
      for (int leaf : {e.u, e.v}) {
        if (degree[leaf] == 1 && !is_terminal[leaf] && leaf != root) {
          alive[k] = 0;
          --degree[e.u];
          --degree[e.v];
          changed = true;
          break;
        }
      }
    }
  }
  for (size_t k = 0; k < forest.size(); ++k) {
    if (alive[k]) result.tree.push_back(forest[k]);
  }
  return result;
}

double MaxDualExcess(const CostMatrix& costs, const GwResult& gw) {
  const int n = costs.size();
  std::vector<std::vector<char>> inside(gw.moats.size(), std::vector<char>(n, 0));
  for (size_t k = 0; k < gw.moats.size(); ++k) {
    for (int v : gw.moats[k].members) inside[k][v] = 1;
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      double load = 0.0;
      for (size_t k = 0; k < gw.moats.size(); ++k) {
        if (inside[k][u] != inside[k][v]) load += gw.moats[k].y;
      }
      worst = std::max(worst, load - costs(u, v));
    }
  }
  return n < 2 ? 0.0 : worst;
}

namespace {

PcstLpLayout LayoutOf(const MsPcstInstance& inst) {
  return {inst.n, inst.root, inst.T(), inst.n * (inst.n - 1) / 2};
}

LpRow CutRow(const PcstLpLayout& layout, const CompleteEdges& edges, int t,
             int v, const std::vector<char>& in_set) {
  LpRow row;
  row.relation = Relation::kGreaterEqual;
  row.rhs = 0.0;
  for (int k : edges.Crossing(in_set)) row.terms.push_back({layout.X(t, k), 1.0});
  row.terms.push_back({layout.S(t, v), -1.0});
  return row;
}

}  // namespace

LpModel BuildPcstBaseLp(const MsPcstInstance& inst) {
  inst.Validate();
  const PcstLpLayout layout = LayoutOf(inst);
  const CompleteEdges edges(inst.n);
  const int T = inst.T();
  LpModel model(layout.Size());
  model.var_names.resize(layout.Size());
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < edges.size(); ++k) {
      auto [u, v] = edges[k];
      model.objective[layout.X(t, k)] = inst.costs[t](u, v);
      model.var_names[layout.X(t, k)] =
          "x_" + std::to_string(t) + "_" + std::to_string(u) + "_" + std::to_string(v);
    }
    for (int v = 0; v < inst.n; ++v) {
      if (v == inst.root) continue;
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
    for (int v = 0; v < inst.n; ++v) {
      if (v == inst.root) continue;
      std::vector<char> single(inst.n, 0);
      single[v] = 1;
      model.AddRow(CutRow(layout, edges, t, v, single));
    }
  }
  for (int t = 0; t + 1 < T; ++t) {
    for (int v = 0; v < inst.n; ++v) {
      if (v == inst.root) continue;
      const int z = layout.Z(t, v), s0 = layout.S(t, v), s1 = layout.S(t + 1, v);
      model.AddRow({{{z, 1.0}, {s0, -1.0}, {s1, 1.0}}, Relation::kGreaterEqual, 0.0});
      model.AddRow({{{z, 1.0}, {s0, 1.0}, {s1, -1.0}}, Relation::kGreaterEqual, 0.0});
    }
  }
  return model;
}

LpModel BuildPcstFullLp(const MsPcstInstance& inst) {
  if (inst.n > 10) throw InstanceError("explicit cut enumeration limited to n <= 10");
  LpModel model = BuildPcstBaseLp(inst);
  const PcstLpLayout layout = LayoutOf(inst);
  const CompleteEdges edges(inst.n);
  const int n = inst.n;
  for (int t = 0; t < inst.T(); ++t) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (mask & (1u << inst.root)) continue;
      if (std::popcount(mask) == 1) continue;  // singletons are in the base
      std::vector<char> in_set(n);
      for (int v = 0; v < n; ++v) in_set[v] = (mask >> v) & 1u;
      for (int v = 0; v < n; ++v) {
        if (in_set[v]) model.AddRow(CutRow(layout, edges, t, v, in_set));
      }
    }
  }
  return model;
}

namespace {

FractionalSolution Unpack(const MsPcstInstance& inst, const LpSolution& sol) {
  const PcstLpLayout layout = LayoutOf(inst);
  const CompleteEdges edges(inst.n);
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
    for (int k = 0; k < edges.size(); ++k) {
      frac.x[t][k] = sol.values[layout.X(t, k)];
      frac.step_parts[t] += inst.costs[t](edges[k].first, edges[k].second) * frac.x[t][k];
    }
    frac.parts.step += frac.step_parts[t];
    for (int v = 0; v < inst.n; ++v) {
      if (v == inst.root) continue;
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

}  // namespace

FractionalSolution PcstLpSolve(const MsPcstInstance& inst,
                               const PcstLpOptions& options) {
  const LpModel base = BuildPcstBaseLp(inst);
  const PcstLpLayout layout = LayoutOf(inst);
  const CompleteEdges edges(inst.n);
  const double tol = options.lp.separation_tol;

  SeparationOracle oracle = [&](std::span<const double> values) {
    std::vector<Cut> cuts;
    for (int t = 0; t < inst.T(); ++t) {
      Graph support(inst.n);
      for (int k = 0; k < edges.size(); ++k) {
        const double x = values[layout.X(t, k)];
        if (x > 0.0) support.AddEdge(edges[k].first, edges[k].second, x);
      }
      for (int v = 0; v < inst.n; ++v) {
        if (v == inst.root) continue;
        const double s = values[layout.S(t, v)];
        if (s <= tol) continue;
        CutResult cut = MinStCut(support, v, inst.root);
        if (cut.value >= s - tol) continue;
        std::vector<char> in_set(inst.n, 0);
        for (int u : cut.source_side) in_set[u] = 1;
        LpRow row = CutRow(layout, edges, t, v, in_set);
        const double violation = row.Violation(values);
        cuts.push_back({std::move(row), violation});
      }
    }
    return cuts;
  };

  LpSolution sol = SolveWithSeparation(base, oracle, options.max_rounds, options.lp);
  if (sol.status != LpStatus::kOptimal) {
    throw SolverError(std::string("pcst LP is ") + ToString(sol.status));
  }
  return Unpack(inst, sol);
}

CostBreakdown EvaluatePcstSchedule(
    const MsPcstInstance& inst,
    const std::vector<std::vector<std::uint8_t>>& connected,
    const std::vector<std::vector<Edge>>& trees) {
  CostBreakdown cost;
  for (int t = 0; t < inst.T(); ++t) {
    for (const Edge& e : trees[t]) cost.step += inst.costs[t](e.u, e.v);
    for (int v = 0; v < inst.n; ++v) {
      if (v != inst.root && !connected[t][v]) cost.penalty += inst.penalties[t][v];
    }
  }
  for (int t = 0; t + 1 < inst.T(); ++t) {
    for (int v = 0; v < inst.n; ++v) {
      if (v != inst.root && connected[t][v] != connected[t + 1][v]) {
        cost.transition += inst.w[v];
      }
    }
  }
  return cost;
}

RoundedSchedule RoundPcst(const MsPcstInstance& inst,
                          const FractionalSolution& frac,
                          const RoundingParams& params) {
  const int T = inst.T();
  RoundedSchedule schedule;
  schedule.decisions.assign(T, std::vector<std::uint8_t>(inst.n, 0));
  std::vector<double> series(T);
  for (int v = 0; v < inst.n; ++v) {
    if (v == inst.root) {
      for (int t = 0; t < T; ++t) schedule.decisions[t][v] = 1;
      continue;
    }
    for (int t = 0; t < T; ++t) series[t] = Clamp01(frac.s[t][v]);
    std::vector<std::uint8_t> y = TwoThresholdRound(series, params);
    for (int t = 0; t < T; ++t) schedule.decisions[t][v] = y[t];
  }
  for (int t = 0; t < T; ++t) {
    std::vector<int> terminals;
    for (int v = 0; v < inst.n; ++v) {
      if (v != inst.root && schedule.decisions[t][v]) terminals.push_back(v);
    }
    schedule.trees.push_back(GwSteinerTree(inst.costs[t], inst.root, terminals).tree);
  }
  schedule.cost = EvaluatePcstSchedule(inst, schedule.decisions, schedule.trees);
  schedule.info.alpha = params.alpha;
  schedule.info.beta = params.beta;
  return schedule;
}

RoundedSchedule SolveMsPcst(const MsPcstInstance& inst, RoundingMode mode,
                            const PcstLpOptions& options,
                            FractionalSolution* frac_out) {
  FractionalSolution frac = PcstLpSolve(inst, options);
  RoundedSchedule best;
  if (mode == RoundingMode::kFixed) {
    best = RoundPcst(inst, frac, {0.75, 0.5});
  } else {
    const DerandomizationConfig cfg = DerandomizationConfig::SteinerTree();
    std::vector<double> values;
    for (int t = 0; t < inst.T(); ++t) {
      for (int v = 0; v < inst.n; ++v) {
        if (v != inst.root) values.push_back(Clamp01(frac.s[t][v]));
      }
    }
    bool first = true;
    for (double alpha : CandidateAlphas(values, cfg, CandidateRule::kComplete)) {
      RoundedSchedule candidate = RoundPcst(inst, frac, {alpha, cfg.kappa * alpha});
      if (first || candidate.cost.Total() < best.cost.Total()) {
        best = std::move(candidate);
        first = false;
      }
    }
    best.info.gamma = cfg.gamma;
  }
  best.info.algorithm = mode == RoundingMode::kFixed ? "rs_mpcst" : "i_rs_mpcst";
  best.info.mode = ToString(mode);
  best.info.lp_value = frac.lp_value;
  best.info.lp_rounds = frac.rounds;
  best.info.lp_certified = frac.certified;
  if (!frac.certified) best.info.flags.push_back("lp_not_certified");
  if (frac_out) *frac_out = std::move(frac);
  return best;
}

}  // namespace mstage
