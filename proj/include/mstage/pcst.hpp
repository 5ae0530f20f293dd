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


#ifndef MSTAGE_PCST_HPP_
#define MSTAGE_PCST_HPP_

#include <vector>

#include "mstage/graph.hpp"
#include "mstage/lp.hpp"
#include "mstage/rounding.hpp"
#include "mstage/schedule.hpp"

namespace mstage {

// Multistage prize-collecting Steiner tree on a complete graph. w[v] is
// paid each time v switches between connected and not connected.
struct MsPcstInstance {
  int n = 0;
  int root = 0;
  std::vector<CostMatrix> costs;              // T matrices
  std::vector<std::vector<double>> penalties;  // T x n
  std::vector<double> w;                       // n

  int T() const { return static_cast<int>(costs.size()); }
  void Validate() const;
};

// Cost given to an edge absent from an input file: one more than every
// finite edge cost and every penalty of the step combined, so no optimal
// solution uses it.
double MissingEdgeCost(const CostMatrix& finite_costs,
                       const std::vector<double>& penalties);

struct Moat {
  std::vector<int> members;
  double y = 0.0;
};

struct GwResult {
  std::vector<Edge> tree;
  double dual_value = 0.0;  // sum of moat duals
  std::vector<Moat> moats;

  double Cost() const;
};

// Primal-dual moat growing for Steiner tree: components holding a terminal
// but not the root grow uniformly, merge along tight edges, then
// non-terminal leaves are pruned.
GwResult GwSteinerTree(const CostMatrix& costs, int root,
                       const std::vector<int>& terminals);

// Largest sum_{S: e in delta(S)} y_S - c(e) over all edges.
double MaxDualExcess(const CostMatrix& costs, const GwResult& gw);

struct PcstLpOptions {
  LpOptions lp = LpOptions::FromEnvironment();
  int max_rounds = 2000;
};

// Variable layout of the relaxation. x^t_e over the complete graph, s^t_v
// and z^t_v for v != root only.
struct PcstLpLayout {
  int n = 0;
  int root = 0;
  int T = 0;
  int edges = 0;

  int X(int t, int e) const { return t * edges + e; }
  int S(int t, int v) const { return T * edges + t * (n - 1) + Slot(v); }
  int Z(int t, int v) const { return T * edges + T * (n - 1) + t * (n - 1) + Slot(v); }
  int Slot(int v) const { return v < root ? v : v - 1; }
  int Size() const { return T * edges + (2 * T - 1) * (n - 1); }
};

// Base model: objective, transition rows and the singleton cuts S = {v}.
LpModel BuildPcstBaseLp(const MsPcstInstance& inst);

// Base model plus every cut row sum_{delta(S)} x^t >= s^t_v for all S with
// v in S and root outside. Exponential; n <= 10.
LpModel BuildPcstFullLp(const MsPcstInstance& inst);

// Cutting-plane solve; cuts come from a min v-root cut per (t, v).
FractionalSolution PcstLpSolve(const MsPcstInstance& inst,
                               const PcstLpOptions& options = {});

// Decisions s~ from the fractional s under fixed thresholds, then one GW
// tree per step on {v : s~^t_v = 1}.
RoundedSchedule RoundPcst(const MsPcstInstance& inst,
                          const FractionalSolution& frac,
                          const RoundingParams& params);

// Fixed: alpha = 3/4, beta = 1/2. Derandomized: every candidate alpha from
// gamma = e^{-1/3}, beta = (2/3) alpha, cheapest schedule wins. When frac_out
// is given the LP solution is copied there.
RoundedSchedule SolveMsPcst(const MsPcstInstance& inst, RoundingMode mode,
                            const PcstLpOptions& options = {},
                            FractionalSolution* frac_out = nullptr);

// Cost of connecting exactly the decided vertices with the given trees.
CostBreakdown EvaluatePcstSchedule(
    const MsPcstInstance& inst,
    const std::vector<std::vector<std::uint8_t>>& connected,
    const std::vector<std::vector<Edge>>& trees);

}  // namespace mstage

#endif  // MSTAGE_PCST_HPP_
