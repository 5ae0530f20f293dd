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


#include "mstage/vertex_cover.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mstage/rounding.hpp"

namespace mstage {

namespace {

void CheckWeights(const std::vector<std::vector<double>>& rows, int n,
                  const char* field) {
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw InstanceError(std::string(field) + " rows need one entry per vertex");
    }
    for (double w : row) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw InstanceError(std::string(field) + " must be finite and >= 0");
      }
    }
  }
}

// Distance to the nearest point of {0, 1/2, 1}, and that point.
double SnapHalf(double v, double* snapped) {
  double best = std::round(v * 2.0) / 2.0;
  best = std::min(1.0, std::max(0.0, best));
  *snapped = best;
  return std::abs(v - best);
}

bool HalfIntegral(const FractionalSolution& frac) {
  double unused;
  for (const auto& row : frac.x) {
    for (double v : row) {
      if (SnapHalf(v, &unused) > kHalfIntegralTol) return false;
    }
  }
  return true;
}

}  // namespace

void MsVcInstance::Validate() const {
  if (n < 1) throw InstanceError("vertexcover needs at least one vertex");
  if (edges.empty()) throw InstanceError("time horizon must be >= 1");
  for (size_t t = 0; t < edges.size(); ++t) {
    for (auto [u, v] : edges[t]) {
      if (u < 0 || u >= n || v < 0 || v >= n || u == v) {
        throw InstanceError("bad edge at step " + std::to_string(t));
      }
    }
  }
  if (weights.size() != edges.size()) throw InstanceError("weights need T rows");
  if (transition.size() + 1 != edges.size()) {
    throw InstanceError("transition needs T-1 rows");
  }
  CheckWeights(weights, n, "weights");
  CheckWeights(transition, n, "transition");
}

LpModel BuildVertexCoverLp(const MsVcInstance& inst) {
  inst.Validate();
  const int n = inst.n;
  const int T = inst.T();
  LpModel model;
  for (int t = 0; t < T; ++t) {
    for (int v = 0; v < n; ++v) {
      model.AddVariable(inst.weights[t][v], 0.0, 1.0,
                        "x_" + std::to_string(t) + "_" + std::to_string(v));
    }
  }
  for (int t = 0; t + 1 < T; ++t) {
    for (int v = 0; v < n; ++v) {
      model.AddVariable(inst.transition[t][v], 0.0, 1.0,
                        "z_" + std::to_string(t) + "_" + std::to_string(v));
    }
  }
  for (int t = 0; t < T; ++t) {
    for (auto [u, v] : inst.edges[t]) {
      model.AddRow({{{t * n + u, 1.0}, {t * n + v, 1.0}}, Relation::kGreaterEqual, 1.0});
    }
  }
  for (int t = 0; t + 1 < T; ++t) {
    for (int v = 0; v < n; ++v) {
      const int x0 = t * n + v;
      const int x1 = (t + 1) * n + v;
      const int z = T * n + t * n + v;
      model.AddRow({{{z, 1.0}, {x1, -1.0}, {x0, 1.0}}, Relation::kGreaterEqual, 0.0});
      model.AddRow({{{z, 1.0}, {x1, 1.0}, {x0, -1.0}}, Relation::kGreaterEqual, 0.0});
    }
  }
  return model;
}

FractionalSolution SolveVertexCoverLp(const MsVcInstance& inst,
                                      const LpOptions& options) {
  LpModel model = BuildVertexCoverLp(inst);
  LpSolution sol = SolveLp(model, options);
  if (sol.status != LpStatus::kOptimal) {
    throw SolverError(std::string("vertex cover LP is ") + ToString(sol.status));
  }
  const int n = inst.n;
  const int T = inst.T();
  FractionalSolution frac;
  frac.lp_value = sol.objective_value;
  frac.x.assign(T, std::vector<double>(n));
  frac.z.assign(std::max(0, T - 1), std::vector<double>(n));
  frac.step_parts.assign(T, 0.0);
  for (int t = 0; t < T; ++t) {
    for (int v = 0; v < n; ++v) {
      frac.x[t][v] = sol.values[t * n + v];
      frac.step_parts[t] += inst.weights[t][v] * frac.x[t][v];
    }
    frac.parts.step += frac.step_parts[t];
  }
  for (int t = 0; t + 1 < T; ++t) {
    for (int v = 0; v < n; ++v) {
      frac.z[t][v] = sol.values[T * n + t * n + v];
      frac.parts.transition += inst.transition[t][v] * frac.z[t][v];
    }
  }
  return frac;
}

bool IsCover(const MsVcInstance& inst, int t, const std::vector<std::uint8_t>& cover) {
  for (auto [u, v] : inst.edges[t]) {
    if (!cover[u] && !cover[v]) return false;
  }
  return true;
}

CostBreakdown EvaluateCoverSchedule(
    const MsVcInstance& inst,
    const std::vector<std::vector<std::uint8_t>>& cover) {
  CostBreakdown cost;
  for (int t = 0; t < inst.T(); ++t) {
    for (int v = 0; v < inst.n; ++v) {
      if (cover[t][v]) cost.step += inst.weights[t][v];
    }
  }
  for (int t = 0; t + 1 < inst.T(); ++t) {
    for (int v = 0; v < inst.n; ++v) {
      if (cover[t][v] != cover[t + 1][v]) cost.transition += inst.transition[t][v];
    }
  }
  return cost;
}

RoundedSchedule SolveMsVertexCover(const MsVcInstance& inst,
                                   const LpOptions& options) {
  FractionalSolution frac = SolveVertexCoverLp(inst, options);
  RoundedSchedule schedule;
  schedule.info.algorithm = "half_integral_lp";
  schedule.info.mode = "fixed";
  if (!HalfIntegral(frac) && options.arithmetic != Arithmetic::kExact) {
    LpOptions exact = options;
    exact.arithmetic = Arithmetic::kExact;
    frac = SolveVertexCoverLp(inst, exact);
    schedule.info.flags.push_back("exact_resolve");
  }
  schedule.info.lp_value = frac.lp_value;

  const int n = inst.n;
  const int T = inst.T();
  schedule.decisions.assign(T, std::vector<std::uint8_t>(n, 0));
  if (HalfIntegral(frac)) {
    schedule.info.path = "half_integral";
    for (int t = 0; t < T; ++t) {
      for (int v = 0; v < n; ++v) {
        double snapped;
        SnapHalf(frac.x[t][v], &snapped);
        schedule.decisions[t][v] = snapped >= 0.5 ? 1 : 0;
      }
    }
  } else {
    // f = 2 thresholds of the set cover rounding.
    const RoundingParams params{0.5, 0.25};
    schedule.info.path = "rs_fallback";
    schedule.info.alpha = params.alpha;
    schedule.info.beta = params.beta;
    schedule.info.flags.push_back("half_integrality_violation");
    std::vector<double> series(T);
    for (int v = 0; v < n; ++v) {
      for (int t = 0; t < T; ++t) series[t] = frac.x[t][v];
      std::vector<std::uint8_t> y = TwoThresholdRound(series, params);
      for (int t = 0; t < T; ++t) schedule.decisions[t][v] = y[t];
    }
  }
  for (int t = 0; t < T; ++t) {
    if (!IsCover(inst, t, schedule.decisions[t])) {
      throw SolverError("rounded vertex set misses an edge at step " +
                        std::to_string(t));
    }
  }
  schedule.cost = EvaluateCoverSchedule(inst, schedule.decisions);
  return schedule;
}

}  // namespace mstage
