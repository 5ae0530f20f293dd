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
#include "support/random.hpp"

namespace mstage {
namespace {

using testing::Rng;

TEST_CASE("steiner oracles") {
  Rng rng(81);
  CostMatrix c = testing::RandomMetric(rng, 5);
  CHECK(ExactSteiner(c, 0, {}) == 0.0);
  CostMatrix path(3);
  path.Set(0, 1, 1.0);
  path.Set(1, 2, 1.0);
  path.Set(0, 2, 5.0);
  CHECK(ExactSteiner(path, 0, {2}) == 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.Int(2, 6);
    CostMatrix m = trial % 2 ? testing::RandomMetric(rng, n) : testing::RandomWeights(rng, n, 1, 20);
    const int root = rng.Int(0, n - 1);
    std::vector<int> terminals;
    for (int v = 0; v < n; ++v) {
      if (v != root && rng.Chance(0.5)) terminals.push_back(v);
    }
    CHECK(ExactSteiner(m, root, terminals) ==
          doctest::Approx(SteinerByEdgeSubsets(m, root, terminals)));
  }
  CHECK_THROWS_AS(ExactSteiner(testing::RandomMetric(rng, 8), 0, {1}), InstanceTooLarge);
}

TEST_CASE("tsp oracles") {
  Rng rng(82);
  CostMatrix c = testing::RandomMetric(rng, 8);
  CHECK(ExactTsp(c, {4}, 4) == 0.0);
  CHECK(ExactTsp(c, {0, 1, 2}, 0) == doctest::Approx(c(0, 1) + c(1, 2) + c(0, 2)));
  for (int trial = 0; trial < 30; ++trial) {
    CostMatrix m = testing::RandomMetric(rng, 8);
    std::vector<int> subset{0, 1, 2, 3, 4, 5, 6, 7};
    subset.resize(rng.Int(1, 8));
    CHECK(ExactTsp(m, subset, subset.back()) ==
          doctest::Approx(TspByPermutations(m, subset, subset.back())));
  }
  std::vector<int> big(11);
  for (int v = 0; v < 11; ++v) big[v] = v;
  CHECK_THROWS_AS(ExactTsp(testing::RandomMetric(rng, 11), big, 0), InstanceTooLarge);
}

TEST_CASE("zero transitions separate into static optima") {
  Rng rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    MsVcInstance inst = testing::RandomVertexCover(rng, 6, 3);
    for (auto& row : inst.transition) std::fill(row.begin(), row.end(), 0.0);
    double sum = 0.0;
    for (int t = 0; t < inst.T(); ++t) {
      MsVcInstance one;
      one.n = inst.n;
      one.edges = {inst.edges[t]};
      one.weights = {inst.weights[t]};
      sum += BruteForceSchedule(one).cost.Total();
    }
    CHECK(BruteForceSchedule(inst).cost.Total() == doctest::Approx(sum));
  }
  for (int trial = 0; trial < 20; ++trial) {
    MsPcstInstance inst = testing::RandomPcst(rng, 5, 3);
    std::fill(inst.w.begin(), inst.w.end(), 0.0);
    double sum = 0.0;
    for (int t = 0; t < inst.T(); ++t) {
      MsPcstInstance one = inst;
      one.costs = {inst.costs[t]};
      one.penalties = {inst.penalties[t]};
      sum += BruteForceSchedule(one).cost.Total();
    }
    CHECK(BruteForceSchedule(inst).cost.Total() == doctest::Approx(sum));
  }
}

TEST_CASE("oracle is a floor for the approximations") {
  Rng rng(84);
  for (int trial = 0; trial < 30; ++trial) {
    MsPctspInstance inst = testing::RandomPctsp(rng, 5, 2);
    RoundedSchedule opt = BruteForceSchedule(inst);
    for (int t = 0; t < inst.T(); ++t) CHECK(opt.decisions[t][inst.depot] == 1);
    CHECK(opt.cost.Total() <= SolveMsPctsp(inst, RoundingMode::kFixed).cost.Total() + 1e-9);
  }
}

TEST_CASE("size guards") {
  MsVcInstance inst;
  inst.n = 8;
  inst.edges = {{{0, 1}}};
  inst.weights = {std::vector<double>(8, 1.0)};
  CHECK_THROWS_AS(BruteForceSchedule(inst), InstanceTooLarge);
  inst.n = 2;
  inst.edges.assign(5, {{0, 1}});
  inst.weights.assign(5, {1.0, 1.0});
  inst.transition.assign(4, {1.0, 1.0});
  CHECK_THROWS_AS(BruteForceSchedule(inst), InstanceTooLarge);
}

}  // namespace
}  // namespace mstage
