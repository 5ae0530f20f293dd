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

#include "doctest.h"
#include "mstage/oracle.hpp"
#include "mstage/set_cover.hpp"
#include "support/random.hpp"

namespace mstage {
namespace {

TEST_CASE("frequency") {
  MsScInstance disjoint;
  disjoint.m = 2;
  disjoint.num_elements = 2;
  disjoint.sets = {{{0}, {1}}};
  disjoint.weights = {{1.0, 1.0}};
  disjoint.penalties = {0.0, 0.0};
  CHECK(Frequency(disjoint) == 1);

  // Vertex cover of a triangle: sets are vertices, elements are edges.
  MsScInstance vc;
  vc.m = 3;
  vc.num_elements = 3;
  vc.sets = {{{0, 2}, {0, 1}, {1, 2}}};
  vc.weights = {{1.0, 1.0, 1.0}};
  vc.penalties = {0.0, 0.0, 0.0};
  CHECK(Frequency(vc) == 2);

  testing::Rng rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    MsScInstance inst = testing::RandomSetCover(rng);
    int f = 0;
    for (int t = 0; t < inst.T(); ++t) {
      for (int e : inst.Ground(t)) {
        int count = 0;
        for (const auto& set : inst.sets[t]) {
          count += std::count(set.begin(), set.end(), e) > 0;
        }
        f = std::max(f, count);
      }
    }
    CHECK(Frequency(inst) == f);
  }
}

TEST_CASE("uncoverable element") {
  MsScInstance inst;
  inst.m = 1;
  inst.num_elements = 2;
  inst.sets = {{{0}}};
  inst.weights = {{1.0}};
  inst.penalties = {0.0};
  CHECK_THROWS_AS(SolveMsSetCover(inst), UncoverableElement);
}

TEST_CASE("single set always chosen") {
  MsScInstance inst;
  inst.m = 1;
  inst.num_elements = 1;
  inst.sets = {{{0}}, {{0}}, {{0}}};
  inst.weights = {{2.0}, {2.0}, {2.0}};
  inst.penalties = {5.0};
  RoundedSchedule s = SolveMsSetCover(inst);
  CHECK(s.cost.Total() == 6.0);
  CHECK(s.cost.Total() == BruteForceSchedule(inst).cost.Total());
}

TEST_CASE("two-element instance with f = 2") {
  MsScInstance inst;
  inst.m = 3;
  inst.num_elements = 2;
  std::vector<std::vector<int>> sets{{0}, {0, 1}, {1}};
  inst.sets = {sets, sets};
  inst.weights = {{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}};
  inst.penalties = {10.0, 10.0, 10.0};
  RoundedSchedule s = SolveMsSetCover(inst);
  CHECK(s.info.f == 2);
  CHECK(CoversStep(inst, 0, s.decisions[0]));
  CHECK(CoversStep(inst, 1, s.decisions[1]));
  CHECK(s.cost.Total() <= 4.0 * *s.info.lp_value + 1e-9);
  CHECK(BruteForceSchedule(inst).cost.Total() == 2.0);
}

TEST_CASE("random instances respect the 2f bounds componentwise") {
  testing::Rng rng(52);
  for (int trial = 0; trial < 150; ++trial) {
    MsScInstance inst = testing::RandomSetCover(rng);
    FractionalSolution frac = SolveSetCoverLp(inst);
    RoundedSchedule s = SolveMsSetCover(inst);
    const double f = Frequency(inst);
    for (int t = 0; t < inst.T(); ++t) CHECK(CoversStep(inst, t, s.decisions[t]));
    CHECK(s.cost.step <= 2 * f * frac.parts.step + 1e-6);
    CHECK(s.cost.transition <= 2 * f * frac.parts.transition + 1e-6);
    CHECK(s.cost.Total() <= 2 * f * frac.lp_value + 1e-6);
    CHECK(s.cost.Total() <= 2 * f * BruteForceSchedule(inst).cost.Total() + 1e-6);
  }
}

}  // namespace
}  // namespace mstage
