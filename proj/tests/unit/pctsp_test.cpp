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
#include "mstage/pctsp.hpp"
#include "support/random.hpp"

namespace mstage {
namespace {

using testing::Rng;

bool ValidTour(const Tour& tour, std::vector<int> subset, int depot) {
  if (tour.sequence.front() != depot || tour.sequence.back() != depot) return false;
  if (subset.size() == 1) return tour.sequence.size() <= 2;
  std::vector<int> inner(tour.sequence.begin(), tour.sequence.end() - 1);
  std::sort(inner.begin(), inner.end());
  std::sort(subset.begin(), subset.end());
  return inner == subset;
}

MsPctspInstance Static(const CostMatrix& c, int depot, std::vector<double> pen, int T) {
  MsPctspInstance inst;
  inst.n = c.size();
  inst.depot = depot;
  for (int t = 0; t < T; ++t) {
    inst.costs.push_back(c);
    inst.penalties.push_back(pen);
  }
  inst.w.assign(inst.n, 0.0);
  return inst;
}

TEST_CASE("augmented graph") {
  Rng rng(71);
  CostMatrix c = testing::RandomMetric(rng, 4);
  AugmentedStepGraph g = BuildAugmentedStepGraph(c, 2);
  CHECK(g.dummy == 4);
  CHECK(g.costs(2, 4) == 0.0);
  for (int v = 0; v < 4; ++v) CHECK(g.costs(v, 4) == c(v, 2));
  CHECK(CheckMetric(g.costs));
}

TEST_CASE("zero penalties: doubled dummy edge and empty tours") {
  Rng rng(72);
  MsPctspInstance inst = Static(testing::RandomMetric(rng, 4), 1, {0, 0, 0, 0}, 2);
  FractionalSolution frac = PctspLpSolve(inst);
  CHECK(frac.lp_value == doctest::Approx(0.0));
  PctspLpLayout layout{inst.n, inst.depot, inst.T(), (inst.n + 1) * inst.n / 2};
  (void)layout;
  for (int t = 0; t < inst.T(); ++t) {
    double total = 0.0;
    for (double x : frac.x[t]) total += x;
    CHECK(total == doctest::Approx(2.0));
    for (int v = 0; v < inst.n; ++v) {
      if (v != inst.depot) CHECK(frac.s[t][v] == doctest::Approx(0.0));
    }
  }
  RoundedSchedule s = SolveMsPctsp(inst, RoundingMode::kFixed);
  CHECK(s.cost.Total() == 0.0);
  for (const Tour& tour : s.tours) CHECK(tour.length == 0.0);
}

TEST_CASE("single visited vertex both steps") {
  CostMatrix c(2);
  c.Set(0, 1, 3.0);
  MsPctspInstance inst = Static(c, 0, {0.0, 1000.0}, 2);
  RoundedSchedule s = SolveMsPctsp(inst, RoundingMode::kFixed);
  CHECK(s.cost.Total() == 12.0);
  CHECK(s.cost.Total() <= 3.5 * *s.info.lp_value + 1e-9);
}

TEST_CASE("three vertices with huge penalties give the Held-Karp value") {
  Rng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    CostMatrix c = testing::RandomMetric(rng, 3);
    MsPctspInstance inst = Static(c, 0, {0.0, 1e4, 1e4}, 1);
    FractionalSolution frac = PctspLpSolve(inst);
    LpSolution full = SolveLp(BuildPctspFullLp(inst));
    CHECK(frac.lp_value == doctest::Approx(full.objective_value).epsilon(1e-9));
    CHECK(frac.lp_value == doctest::Approx(c(0, 1) + c(1, 2) + c(0, 2)).epsilon(1e-9));
  }
}

TEST_CASE("separated LP matches the explicit LP on random metrics") {
  Rng rng(74);
  for (int trial = 0; trial < 40; ++trial) {
    MsPctspInstance inst = testing::RandomPctsp(rng, 5, 2);
    FractionalSolution frac = PctspLpSolve(inst);
    LpSolution full = SolveLp(BuildPctspFullLp(inst));
    REQUIRE(full.status == LpStatus::kOptimal);
    CHECK(std::abs(frac.lp_value - full.objective_value) <= 1e-6);
  }
}

TEST_CASE("christofides") {
  Rng rng(75);
  CostMatrix c = testing::RandomMetric(rng, 5);
  Tour one = ChristofidesTour(c, {3}, 3);
  CHECK(one.length == 0.0);
  Tour two = ChristofidesTour(c, {3, 1}, 3);
  CHECK(two.length == doctest::Approx(2.0 * c(1, 3)));
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.Int(1, 8);
    CostMatrix m = testing::RandomMetric(rng, 8);
    std::vector<int> subset{0, 1, 2, 3, 4, 5, 6, 7};
    std::shuffle(subset.begin(), subset.end(), std::mt19937(trial));
    subset.resize(n);
    Tour tour = ChristofidesTour(m, subset, subset[0]);
    CHECK(ValidTour(tour, subset, subset[0]));
    CHECK(tour.length <= 1.5 * ExactTsp(m, subset, subset[0]) + 1e-7);
    Tour greedy = ChristofidesTour(m, subset, subset[0], MatchingMode::kGreedy);
    CHECK(ValidTour(greedy, subset, subset[0]));
  }
}

TEST_CASE("random instances meet the approximation bounds") {
  Rng rng(76);
  const double alpha = 5.0 / 7.0, beta = 3.0 / 7.0;
  for (int trial = 0; trial < 40; ++trial) {
    MsPctspInstance inst = testing::RandomPctsp(rng);
    FractionalSolution frac;
    RoundedSchedule fixed = SolveMsPctsp(inst, RoundingMode::kFixed, MatchingMode::kExact, {}, &frac);
    RoundedSchedule derand = SolveMsPctsp(inst, RoundingMode::kDerandomized);
    const double opt = BruteForceSchedule(inst).cost.Total();
    CHECK(frac.lp_value <= opt + 1e-6);
    CHECK(opt <= fixed.cost.Total() + 1e-6);
    CHECK(fixed.cost.Total() <= 3.5 * frac.lp_value + 1e-6);
    CHECK(derand.cost.Total() <= 3.034 * frac.lp_value + 1e-6);
    CHECK(fixed.cost.penalty <= frac.parts.penalty / (1 - alpha) + 1e-6);
    CHECK(fixed.cost.transition <= frac.parts.transition / (alpha - beta) + 1e-6);
    for (int t = 0; t < inst.T(); ++t) {
      std::vector<int> visited;
      for (int v = 0; v < inst.n; ++v) {
        if (fixed.decisions[t][v]) visited.push_back(v);
      }
      CHECK(ValidTour(fixed.tours[t], visited, inst.depot));
      CHECK(fixed.tours[t].length <= 1.5 / beta * frac.step_parts[t] + 1e-6);
      std::vector<double> cuts = DummyCutValues(inst, frac, t, 1.0 / beta);
      for (int v : visited) CHECK(cuts[v] >= 2.0 - 1e-6);
    }
  }
}

TEST_CASE("non-metric costs are rejected") {
  CostMatrix c(3);
  c.Set(0, 2, 10.0);
  c.Set(0, 1, 1.0);
  c.Set(1, 2, 1.0);
  CHECK_THROWS_AS(SolveMsPctsp(Static(c, 0, {0, 1, 1}, 1), RoundingMode::kFixed), InstanceError);
}

}  // namespace
}  // namespace mstage
