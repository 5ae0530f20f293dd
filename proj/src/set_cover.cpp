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


#include "mstage/set_cover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mstage/rounding.hpp"

namespace mstage {

std::vector<int> MsScInstance::Ground(int t) const {
  if (ground.empty()) {
    std::vector<int> all(num_elements);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  return ground[t];
}

void MsScInstance::Validate() const {
  if (m < 1) throw InstanceError("setcover needs at least one set");
  if (num_elements < 0) throw InstanceError("num_elements must be >= 0");
  if (sets.empty()) throw InstanceError("time horizon must be >= 1");
  const int T = this->T();
  if (!ground.empty() && static_cast<int>(ground.size()) != T) {
    throw InstanceError("ground needs T rows");
  }
  for (const auto& g : ground) {
    for (int e : g) {
      if (e < 0 || e >= num_elements) throw InstanceError("ground element out of range");
    }
  }
  for (int t = 0; t < T; ++t) {
    if (static_cast<int>(sets[t].size()) != m) {
      throw InstanceError("sets at step " + std::to_string(t) + " need m entries");
    }
    for (const auto& s : sets[t]) {
      for (int e : s) {
        if (e < 0 || e >= num_elements) {
          throw InstanceError("set element out of range at step " + std::to_string(t));
        }
      }
    }
  }
  if (static_cast<int>(weights.size()) != T) throw InstanceError("weights need T rows");
  for (const auto& row : weights) {
    if (static_cast<int>(row.size()) != m) throw InstanceError("weights rows need m entries");
    for (double w : row) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw InstanceError("weights must be finite and >= 0");
      }
    }
  }
  if (static_cast<int>(penalties.size()) != m) throw InstanceError("penalties need m entries");
  for (double p : penalties) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InstanceError("penalties must be finite and >= 0");
    }
  }
}

namespace {

// covering[t][e]: sets containing e at step t, sorted, without repeats.
std::vector<std::vector<std::vector<int>>> Covering(const MsScInstance& inst) {
  std::vector<std::vector<std::vector<int>>> out(
      inst.T(), std::vector<std::vector<int>>(inst.num_elements));
  for (int t = 0; t < inst.T(); ++t) {
    for (int i = 0; i < inst.m; ++i) {
      for (int e : inst.sets[t][i]) {
        auto& list = out[t][e];
        if (list.empty() || list.back() != i) list.push_back(i);
      }
    }
  }
  return out;
}

}  // namespace

int Frequency(const MsScInstance& inst) {
  inst.Validate();
  auto covering = Covering(inst);
  int f = 0;
  for (int t = 0; t < inst.T(); ++t) {
    for (int e : inst.Ground(t)) {
      const int k = static_cast<int>(covering[t][e].size());
      if (k == 0) {
        throw UncoverableElement("element " + std::to_string(e) +
                                 " lies in no set at step " + std::to_string(t));
      }
      f = std::max(f, k);
    }
  }
  return f;
}

LpModel BuildSetCoverLp(const MsScInstance& inst) {
  Frequency(inst);  // validates and rejects uncoverable elements
  const int m = inst.m;
  const int T = inst.T();
  auto covering = Covering(inst);
  LpModel model;
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < m; ++i) {
      model.AddVariable(inst.weights[t][i], 0.0, 1.0,
                        "x_" + std::to_string(t) + "_" + std::to_string(i));
    }
  }
  for (int t = 0; t + 1 < T; ++t) {
    for (int i = 0; i < m; ++i) {
      model.AddVariable(inst.penalties[i], 0.0, 1.0,
                        "z_" + std::to_string(t) + "_" + std::to_string(i));
    }
  }
  for (int t = 0; t < T; ++t) {
    for (int e : inst.Ground(t)) {
      LpRow row;
      row.relation = Relation::kGreaterEqual;
      row.rhs = 1.0;
      for (int i : covering[t][e]) row.terms.push_back({t * m + i, 1.0});
      model.AddRow(std::move(row));
    }
  }
  for (int t = 0; t + 1 < T; ++t) {
    for (int i = 0; i < m; ++i) {
      const int x0 = t * m + i;
      const int x1 = (t + 1) * m + i;
      const int z = T * m + t * m + i;
      model.AddRow({{{z, 1.0}, {x1, -1.0}, {x0, 1.0}}, Relation::kGreaterEqual, 0.0});
      model.AddRow({{{z, 1.0}, {x1, 1.0}, {x0, -1.0}}, Relation::kGreaterEqual, 0.0});
    }
  }
  return model;
}

FractionalSolution SolveSetCoverLp(const MsScInstance& inst,
                                   const LpOptions& options) {
  LpModel model = BuildSetCoverLp(inst);
  LpSolution sol = SolveLp(model, options);
  if (sol.status != LpStatus::kOptimal) {
    throw SolverError(std::string("set cover LP is ") + ToString(sol.status));
  }
  const int m = inst.m;
  const int T = inst.T();
  FractionalSolution frac;
  frac.lp_value = sol.objective_value;
  frac.x.assign(T, std::vector<double>(m));
  frac.z.assign(std::max(0, T - 1), std::vector<double>(m));
  frac.step_parts.assign(T, 0.0);
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < m; ++i) {
      frac.x[t][i] = sol.values[t * m + i];
      frac.step_parts[t] += inst.weights[t][i] * frac.x[t][i];
    }
    frac.parts.step += frac.step_parts[t];
  }
  for (int t = 0; t + 1 < T; ++t) {
    for (int i = 0; i < m; ++i) {
      frac.z[t][i] = sol.values[T * m + t * m + i];
      frac.parts.transition += inst.penalties[i] * frac.z[t][i];
    }
  }
  return frac;
}

bool CoversStep(const MsScInstance& inst, int t,
                const std::vector<std::uint8_t>& chosen) {
  std::vector<char> covered(inst.num_elements, 0);
  for (int i = 0; i < inst.m; ++i) {
    if (!chosen[i]) continue;
    for (int e : inst.sets[t][i]) covered[e] = 1;
  }
  for (int e : inst.Ground(t)) {
    if (!covered[e]) return false;
  }
  return true;
}

CostBreakdown EvaluateSetCoverSchedule(
    const MsScInstance& inst,
    const std::vector<std::vector<std::uint8_t>>& chosen) {
  CostBreakdown cost;
  for (int t = 0; t < inst.T(); ++t) {
    for (int i = 0; i < inst.m; ++i) {
      if (chosen[t][i]) cost.step += inst.weights[t][i];
    }
  }
  for (int t = 0; t + 1 < inst.T(); ++t) {
    for (int i = 0; i < inst.m; ++i) {
      if (chosen[t][i] != chosen[t + 1][i]) cost.transition += inst.penalties[i];
    }
  }
  return cost;
}

RoundedSchedule SolveMsSetCover(const MsScInstance& inst,
                                const LpOptions& options) {
  // Nothing to cover gives f = 0; f = 1 keeps the thresholds valid.
  const int f = std::max(1, Frequency(inst));
  FractionalSolution frac = SolveSetCoverLp(inst, options);
  const RoundingParams params{1.0 / f, 1.0 / (2.0 * f)};
  const int m = inst.m;
  const int T = inst.T();

  RoundedSchedule schedule;
  schedule.decisions.assign(T, std::vector<std::uint8_t>(m, 0));
  std::vector<double> series(T);
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < T; ++t) series[t] = frac.x[t][i];
    std::vector<std::uint8_t> y = TwoThresholdRound(series, params);
    for (int t = 0; t < T; ++t) schedule.decisions[t][i] = y[t];
  }
  for (int t = 0; t < T; ++t) {
    if (!CoversStep(inst, t, schedule.decisions[t])) {
      throw SolverError("rounded collection leaves an element uncovered at step " +
                        std::to_string(t));
    }
  }
  schedule.cost = EvaluateSetCoverSchedule(inst, schedule.decisions);
  schedule.info.algorithm = "rs_msc";
  schedule.info.mode = "fixed";
  schedule.info.alpha = params.alpha;
  schedule.info.beta = params.beta;
  schedule.info.f = f;
  schedule.info.lp_value = frac.lp_value;
  return schedule;
}

}  // namespace mstage
