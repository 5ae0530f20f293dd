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


#ifndef MSTAGE_PCTSP_HPP_
#define MSTAGE_PCTSP_HPP_

#include <vector>

#include "mstage/graph.hpp"
#include "mstage/lp.hpp"
#include "mstage/rounding.hpp"
#include "mstage/schedule.hpp"

namespace mstage {

// Multistage prize-collecting TSP on complete metric costs. The depot is
// always visited; w[v] is paid each time v enters or leaves the tour.
struct MsPctspInstance {
  int n = 0;
  int depot = 0;
  std::vector<CostMatrix> costs;              // T metric matrices
  std::vector<std::vector<double>> penalties;  // T x n
  std::vector<double> w;                       // n

  int T() const { return static_cast<int>(costs.size()); }
  void Validate() const;
};

// G' = G plus a dummy vertex r' = n with c(r, r') = 0 and
// c(v, r') = c(v, r).
struct AugmentedStepGraph {
  CostMatrix costs;  // (n+1) x (n+1)
  int depot = 0;
  int dummy = 0;
};

AugmentedStepGraph BuildAugmentedStepGraph(const CostMatrix& costs, int depot);

struct PctspLpOptions {
  LpOptions lp = LpOptions::FromEnvironment();
  int max_rounds = 2000;
};

// x^t_e over the complete graph G', s^t_v and z^t_v for v != depot. The
// dummy edge {r, r'} has upper bound 2 so that the depot-only solution
// (a doubled zero-cost edge) is representable.
struct PctspLpLayout {
  int n = 0;
  int depot = 0;
  int T = 0;
  int edges = 0;  // edges of G'

  int X(int t, int e) const { return t * edges + e; }
  int S(int t, int v) const { return T * edges + t * (n - 1) + Slot(v); }
  int Z(int t, int v) const { return T * edges + T * (n - 1) + t * (n - 1) + Slot(v); }
  int Slot(int v) const { return v < depot ? v : v - 1; }
  int Size() const { return T * edges + (2 * T - 1) * (n - 1); }
};

// Degree equalities for every vertex of G' (s fixed to 1 at r and r'),
// transition rows and the objective.
LpModel BuildPctspBaseLp(const MsPctspInstance& inst);

// Base model plus every cut row sum_{delta(S)} x^t >= 2 s^t_v over v in V
// and S subset of V containing v (r' outside). n <= 10.
LpModel BuildPctspFullLp(const MsPctspInstance& inst);

FractionalSolution PctspLpSolve(const MsPctspInstance& inst,
                                const PctspLpOptions& options = {});

// Min v-r' cut in G' under capacities scale * x^t, for every v in V.
std::vector<double> DummyCutValues(const MsPctspInstance& inst,
                                   const FractionalSolution& frac, int t,
                                   double scale);

// MST on R, matching on its odd-degree vertices, Euler circuit, shortcut.
// R must contain the depot.
Tour ChristofidesTour(const CostMatrix& costs, const std::vector<int>& subset,
                      int depot, MatchingMode mode = MatchingMode::kExact);

RoundedSchedule RoundPctsp(const MsPctspInstance& inst,
                           const FractionalSolution& frac,
                           const RoundingParams& params,
                           MatchingMode matching = MatchingMode::kExact);

// Fixed: alpha = 5/7, beta = 3/7. Derandomized: gamma = e^{-2/5},
// beta = (3/5) alpha, cheapest schedule over the candidate thresholds.
RoundedSchedule SolveMsPctsp(const MsPctspInstance& inst, RoundingMode mode,
                             MatchingMode matching = MatchingMode::kExact,
                             const PctspLpOptions& options = {},
                             FractionalSolution* frac_out = nullptr);

CostBreakdown EvaluatePctspSchedule(
    const MsPctspInstance& inst,
    const std::vector<std::vector<std::uint8_t>>& visited,
    const std::vector<Tour>& tours);

}  // namespace mstage

#endif  // MSTAGE_PCTSP_HPP_
