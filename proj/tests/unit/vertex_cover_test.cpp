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


#include <cmath>

#include "doctest.h"
#include "mstage/oracle.hpp"
#include "mstage/vertex_cover.hpp"
#include "support/random.hpp"

namespace mstage {
namespace {

double HalfDistance(double x) {
  return std::min({std::abs(x), std::abs(x - 0.5), std::abs(x - 1.0)});
}

TEST_CASE("single edge") {
  MsVcInstance inst;
  inst.n = 2;
  inst.edges = {{{0, 1}}};
  inst.weights = {{1.0, 1.0}};
  FractionalSolution frac = SolveVertexCoverLp(inst);
  CHECK(frac.lp_value == doctest::Approx(1.0));
  RoundedSchedule s = SolveMsVertexCover(inst);
  CHECK(s.info.path == "half_integral");
  CHECK(s.cost.Total() <= 2.0);
  CHECK(BruteForceSchedule(inst).cost.Total() == 1.0);
}

TEST_CASE("unit triangle has the all-halves vertex") {
  MsVcInstance inst;
  inst.n = 3;
  inst.edges = {{{0, 1}, {1, 2}, {0, 2}}};
  inst.weights = {{1.0, 1.0, 1.0}};
  FractionalSolution frac = SolveVertexCoverLp(inst);
  CHECK(frac.lp_value == doctest::Approx(1.5));
  for (double x : frac.x[0]) CHECK(x == doctest::Approx(0.5));
  RoundedSchedule s = SolveMsVertexCover(inst);
  CHECK(s.cost.Total() == doctest::Approx(3.0));
  CHECK(BruteForceSchedule(inst).cost.Total() == 2.0);
}

TEST_CASE("identical triangles keep one cover") {
  MsVcInstance inst;
  inst.n = 3;
  std::vector<std::pair<int, int>> tri{{0, 1}, {1, 2}, {0, 2}};
  inst.edges = {tri, tri};
  inst.weights = {{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}};
  inst.transition = {{1000.0, 1000.0, 1000.0}};
  RoundedSchedule s = SolveMsVertexCover(inst);
  CHECK(s.decisions[0] == s.decisions[1]);
  CHECK(s.cost.Total() <= 2.0 * BruteForceSchedule(inst).cost.Total() + 1e-6);
}

TEST_CASE("random instances: feasible, half-integral and within twice the optimum") {
  testing::Rng rng(41);
  int fallback = 0;
  for (int trial = 0; trial < 200; ++trial) {
    MsVcInstance inst = testing::RandomVertexCover(rng);
    FractionalSolution frac = SolveVertexCoverLp(inst);
    RoundedSchedule s = SolveMsVertexCover(inst);
    if (s.info.path != "half_integral") ++fallback;
    for (int t = 0; t < inst.T(); ++t) {
      CHECK(IsCover(inst, t, s.decisions[t]));
    }
    if (s.info.path == "half_integral") {
      for (int t = 0; t < inst.T(); ++t) {
        for (int v = 0; v < inst.n; ++v) {
          CHECK(HalfDistance(frac.x[t][v]) <= kHalfIntegralTol);
          CHECK(s.decisions[t][v] <= 2.0 * frac.x[t][v] + kHalfIntegralTol);
          if (t + 1 < inst.T()) {
            CHECK(std::abs(s.decisions[t + 1][v] - s.decisions[t][v]) <=
                  2.0 * std::abs(frac.x[t + 1][v] - frac.x[t][v]) + 2 * kHalfIntegralTol);
          }
        }
      }
    }
    CHECK(s.cost.Total() <= 2.0 * frac.lp_value + 1e-6);
    CHECK(s.cost.Total() <= 2.0 * BruteForceSchedule(inst).cost.Total() + 1e-6);
  }
  CHECK(fallback <= 2);
}

TEST_CASE("invalid vertex cover instances") {
  MsVcInstance inst;
  inst.n = 2;
  inst.edges = {{{0, 2}}};
  inst.weights = {{1.0, 1.0}};
  CHECK_THROWS_AS(SolveMsVertexCover(inst), InstanceError);
  inst.edges = {{{0, 1}}};
  inst.weights = {{1.0}};
  CHECK_THROWS_AS(SolveMsVertexCover(inst), InstanceError);
}

}  // namespace
}  // namespace mstage
