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


#include "doctest.h"
#include "mstage/mincut.hpp"
#include "mstage/oracle.hpp"
#include "support/random.hpp"

namespace mstage {
namespace {

MsCutInstance PathExample() {
  // s=0, a=1, p=2.
  MsCutInstance inst;
  inst.n = 3;
  inst.source = 0;
  inst.sink = 2;
  inst.steps = {{{0, 1, 1.0}, {1, 2, 3.0}}, {{0, 1, 3.0}, {1, 2, 1.0}}};
  inst.transition = {{0.0, 1.0, 0.0}};
  return inst;
}

TEST_CASE("time-expanded graph shape") {
  MsCutInstance one;
  one.n = 2;
  one.steps = {{{0, 1, 4.0}}};
  TimeExpandedGraph g1 = BuildTimeExpandedGraph(one);
  CHECK(g1.graph.n == 4);
  CHECK(g1.graph.edges.size() == 3);

  MsCutInstance inst = PathExample();
  TimeExpandedGraph g = BuildTimeExpandedGraph(inst);
  CHECK(g.graph.n == 8);
  int inter = 0;
  for (const Edge& e : g.graph.edges) {
    if (e.weight < g.infinity && e.u % 3 == e.v % 3 && e.u != e.v &&
        e.u < 6 && e.v < 6) {
      ++inter;
    }
  }
  CHECK(inter == 3);
}

TEST_CASE("path example switches a between steps") {
  RoundedSchedule s = SolveMsMinCut(PathExample());
  CHECK(s.cost.Total() == 3.0);
  CHECK(s.decisions[0][1] == 0);
  CHECK(s.decisions[1][1] == 1);
  CHECK(BruteForceSchedule(PathExample()).cost.Total() == 3.0);
}

TEST_CASE("identical steps with heavy transitions") {
  testing::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    MsCutInstance base = testing::RandomCut(rng, 6, 1);
    MsCutInstance inst = base;
    inst.steps = {base.steps[0], base.steps[0], base.steps[0]};
    inst.transition.assign(2, std::vector<double>(inst.n, 1000.0));
    RoundedSchedule s = SolveMsMinCut(inst);
    CHECK(s.cost.Total() == 3.0 * SolveMsMinCut(base).cost.Total());
    CHECK(s.cost.transition == 0.0);
  }
}

TEST_CASE("exact on random instances and monotone in edge costs") {
  testing::Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    MsCutInstance inst = testing::RandomCut(rng);
    RoundedSchedule s = SolveMsMinCut(inst);
    for (int t = 0; t < inst.T(); ++t) {
      CHECK(s.decisions[t][inst.source] == 1);
      CHECK(s.decisions[t][inst.sink] == 0);
    }
    TimeExpandedGraph g = BuildTimeExpandedGraph(inst);
    CHECK(s.cost.Total() == MinStCut(g.graph, g.super_source, g.super_sink).value);
    CHECK(s.cost.Total() == BruteForceSchedule(inst).cost.Total());
    for (auto& edges : inst.steps) {
      if (!edges.empty()) {
        edges[0].weight += 2.0;
        break;
      }
    }
    CHECK(SolveMsMinCut(inst).cost.Total() >= s.cost.Total());
  }
}

TEST_CASE("invalid instances") {
  MsCutInstance inst = PathExample();
  inst.sink = 0;
  CHECK_THROWS_AS(SolveMsMinCut(inst), InstanceError);
  inst = PathExample();
  inst.transition.clear();
  CHECK_THROWS_AS(SolveMsMinCut(inst), InstanceError);
  inst = PathExample();
  inst.steps[0][0].weight = -1.0;
  CHECK_THROWS_AS(SolveMsMinCut(inst), InstanceError);
}

}  // namespace
}  // namespace mstage
