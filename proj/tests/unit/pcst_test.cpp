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


#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "mstage/oracle.hpp"
#include "mstage/pcst.hpp"
#include "support/random.hpp"

namespace mstage {
namespace {

using testing::Rng;

double EdgeSum(const std::vector<Edge>& edges) {
  double sum = 0.0;
  for (const Edge& e : edges) sum += e.weight;
  return sum;
}

bool ConnectsToRoot(const std::vector<Edge>& tree, int n, int root, int v) {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : tree) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : adj[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen[v];
}

MsPcstInstance Static(const CostMatrix& c, int root, std::vector<double> pen, int T) {
  MsPcstInstance inst;
  inst.n = c.size();
  inst.root = root;
  for (int t = 0; t < T; ++t) {
    inst.costs.push_back(c);
    inst.penalties.push_back(pen);
  }
  inst.w.assign(inst.n, 0.0);
  return inst;
}

TEST_CASE("moat growing with no terminals") {
  CostMatrix c(3);
  c.Set(0, 1, 1.0);
  GwResult gw = GwSteinerTree(c, 0, {});
  CHECK(gw.tree.empty());
  CHECK(gw.dual_value == 0.0);
}

TEST_CASE("moat growing on one edge") {
  CostMatrix c(2);
  c.Set(0, 1, 3.0);
  GwResult gw = GwSteinerTree(c, 0, {1});
  REQUIRE(gw.tree.size() == 1);
  CHECK(gw.Cost() == 3.0);
  CHECK(gw.dual_value == doctest::Approx(3.0));
}

TEST_CASE("moat growing on random metrics") {
  Rng rng(61);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.Int(2, 7);
    CostMatrix c = trial % 3 ? testing::RandomMetric(rng, n) : testing::RandomWeights(rng, n, 1, 30);
    const int root = rng.Int(0, n - 1);
    std::vector<int> terminals;
    for (int v = 0; v < n; ++v) {
      if (v != root && rng.Chance(0.5) && terminals.size() < 4) terminals.push_back(v);
    }
    GwResult gw = GwSteinerTree(c, root, terminals);
    for (int v : terminals) CHECK(ConnectsToRoot(gw.tree, n, root, v));
    CHECK(gw.Cost() <= 2.0 * gw.dual_value + 1e-7);
    CHECK(MaxDualExcess(c, gw) <= 1e-7);
    CHECK(gw.Cost() <= 2.0 * SteinerByEdgeSubsets(c, root, terminals) + 1e-7);
  }
}

TEST_CASE("LP with zero penalties is zero") {
  Rng rng(62);
  MsPcstInstance inst = Static(testing::RandomMetric(rng, 4), 0, {0, 0, 0, 0}, 2);
  FractionalSolution frac = PcstLpSolve(inst);
  CHECK(frac.lp_value == doctest::Approx(0.0));
  for (const auto& row : frac.x) {
    for (double x : row) CHECK(x == doctest::Approx(0.0));
  }
  RoundedSchedule s = SolveMsPcst(inst, RoundingMode::kFixed);
  CHECK(s.cost.Total() == 0.0);
  for (const auto& tree : s.trees) CHECK(tree.empty());
}

TEST_CASE("LP connects a vertex with a huge penalty") {
  CostMatrix c(2);
  c.Set(0, 1, 1.0);
  MsPcstInstance inst = Static(c, 0, {0.0, 1000.0}, 1);
  FractionalSolution frac = PcstLpSolve(inst);
  CHECK(frac.s[0][1] == doctest::Approx(1.0));
  CHECK(frac.lp_value == doctest::Approx(1.0));
}

TEST_CASE("triangle: separated LP equals the explicit cut LP") {
  CostMatrix c(3);
  c.Set(0, 1, 2.0);
  c.Set(1, 2, 1.0);
  c.Set(0, 2, 2.5);
  MsPcstInstance inst = Static(c, 0, {0.0, 100.0, 0.0}, 1);
  FractionalSolution frac = PcstLpSolve(inst);
  LpSolution full = SolveLp(BuildPcstFullLp(inst));
  CHECK(frac.s[0][1] == doctest::Approx(1.0));
  CHECK(frac.lp_value == doctest::Approx(full.objective_value).epsilon(1e-9));
  CHECK(frac.lp_value == doctest::Approx(2.0));
}

TEST_CASE("separated LP matches the explicit LP on random instances") {
  Rng rng(63);
  for (int trial = 0; trial < 40; ++trial) {
    MsPcstInstance inst = testing::RandomPcst(rng, 5, 2);
    FractionalSolution frac = PcstLpSolve(inst);
    LpSolution full = SolveLp(BuildPcstFullLp(inst));
    REQUIRE(full.status == LpStatus::kOptimal);
    CHECK(std::abs(frac.lp_value - full.objective_value) <= 1e-6);
    CHECK(frac.certified);
    CHECK(frac.parts.Total() == doctest::Approx(frac.lp_value));
  }
}

TEST_CASE("static repeated instance: per-step edge bound") {
  Rng rng(64);
  for (int trial = 0; trial < 20; ++trial) {
    auto one = testing::RandomPcst(rng, 5, 1);
    MsPcstInstance inst = Static(one.costs[0], one.root, one.penalties[0], 3);
    FractionalSolution frac;
    RoundedSchedule s = SolveMsPcst(inst, RoundingMode::kFixed, {}, &frac);
    for (int t = 0; t < inst.T(); ++t) {
      double pen_lp = 0.0, pen = 0.0;
      for (int v = 0; v < inst.n; ++v) {
        if (v == inst.root) continue;
        pen_lp += inst.penalties[t][v] * (1.0 - frac.s[t][v]);
        if (!s.decisions[t][v]) pen += inst.penalties[t][v];
      }
      double edge_lp = frac.step_parts[t];
      CHECK(EdgeSum(s.trees[t]) + pen <= 4.0 * (edge_lp + pen_lp) + 1e-6);
    }
  }
}

TEST_CASE("random instances meet the approximation bounds") {
  Rng rng(65);
  for (int trial = 0; trial < 40; ++trial) {
    MsPcstInstance inst = testing::RandomPcst(rng);
    FractionalSolution frac;
    RoundedSchedule fixed = SolveMsPcst(inst, RoundingMode::kFixed, {}, &frac);
    RoundedSchedule derand = SolveMsPcst(inst, RoundingMode::kDerandomized);
    const double opt = BruteForceSchedule(inst).cost.Total();
    CHECK(opt <= fixed.cost.Total() + 1e-6);
    CHECK(frac.lp_value <= opt + 1e-6);
    CHECK(fixed.cost.Total() <= 4.0 * frac.lp_value + 1e-6);
    CHECK(derand.cost.Total() <= 3.53 * frac.lp_value + 1e-6);
    CHECK(fixed.cost.penalty <= frac.parts.penalty / 0.25 + 1e-6);
    CHECK(fixed.cost.transition <= frac.parts.transition / 0.25 + 1e-6);
    for (int t = 0; t < inst.T(); ++t) {
      CHECK(EdgeSum(fixed.trees[t]) <= 4.0 * frac.step_parts[t] + 1e-6);
      for (int v = 0; v < inst.n; ++v) {
        if (fixed.decisions[t][v]) CHECK(ConnectsToRoot(fixed.trees[t], inst.n, inst.root, v));
      }
    }
    CostBreakdown again = EvaluatePcstSchedule(inst, fixed.decisions, fixed.trees);
    CHECK(again.Total() == doctest::Approx(fixed.cost.Total()));
  }
}

TEST_CASE("missing edge cost dominates") {
  CostMatrix c(3);
  c.Set(0, 1, 2.0);
  c.Set(1, 2, 3.0);
  CHECK(MissingEdgeCost(c, {1.0, 4.0, 0.0}) == 11.0);
}

}  // namespace
}  // namespace mstage
