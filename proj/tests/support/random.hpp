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


// Seeded random draws and small random instances for the test suites.

#ifndef MSTAGE_TESTS_SUPPORT_RANDOM_HPP_
#define MSTAGE_TESTS_SUPPORT_RANDOM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mstage/mincut.hpp"
#include "mstage/pcst.hpp"
#include "mstage/pctsp.hpp"
#include "mstage/set_cover.hpp"
#include "mstage/vertex_cover.hpp"

namespace mstage::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Real(double lo, double hi) { return lo + (hi - lo) * Unit(); }
  int Int(int lo, int hi) {
    return lo + std::min(hi - lo, static_cast<int>(Unit() * (hi - lo + 1)));
  }
  bool Chance(double p) { return Unit() < p; }

 private:
  std::mt19937_64 engine_;
};

inline CostMatrix RandomMetric(Rng& rng, int n, double side = 100.0) {
  std::vector<double> x(n), y(n);
  for (int v = 0; v < n; ++v) {
    x[v] = rng.Real(0.0, side);
    y[v] = rng.Real(0.0, side);
  }
  CostMatrix c(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) c.Set(u, v, std::hypot(x[u] - x[v], y[u] - y[v]));
  }
  return c;
}

// Arbitrary non-negative symmetric weights (not necessarily metric).
inline CostMatrix RandomWeights(Rng& rng, int n, int lo = 0, int hi = 20) {
  CostMatrix c(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) c.Set(u, v, rng.Int(lo, hi));
  }
  return c;
}

inline std::vector<std::vector<double>> IntTable(Rng& rng, int rows, int cols, int lo, int hi) {
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols));
  for (auto& row : out) {
    for (double& v : row) v = rng.Int(lo, hi);
  }
  return out;
}

inline MsCutInstance RandomCut(Rng& rng, int max_n = 6, int max_T = 3) {
  MsCutInstance inst;
  inst.n = rng.Int(2, max_n);
  inst.source = 0;
  inst.sink = inst.n - 1;
  const int T = rng.Int(1, max_T);
  for (int t = 0; t < T; ++t) {
    std::vector<Edge> edges;
    for (int u = 0; u < inst.n; ++u) {
      for (int v = u + 1; v < inst.n; ++v) {
        if (rng.Chance(0.6)) edges.push_back({u, v, static_cast<double>(rng.Int(0, 9))});
      }
    }
    inst.steps.push_back(std::move(edges));
  }
  inst.transition = IntTable(rng, T - 1, inst.n, 0, 6);
  return inst;
}

inline MsVcInstance RandomVertexCover(Rng& rng, int max_n = 6, int max_T = 3) {
  MsVcInstance inst;
  inst.n = rng.Int(2, max_n);
  const int T = rng.Int(1, max_T);
  const double density = rng.Real(0.2, 0.9);
  for (int t = 0; t < T; ++t) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < inst.n; ++u) {
      for (int v = u + 1; v < inst.n; ++v) {
        if (rng.Chance(density)) edges.emplace_back(u, v);
      }
    }
    inst.edges.push_back(std::move(edges));
  }
  inst.weights = IntTable(rng, T, inst.n, 1, 10);
  inst.transition = IntTable(rng, T - 1, inst.n, 0, 8);
  return inst;
}

inline MsScInstance RandomSetCover(Rng& rng, int max_m = 6, int max_elements = 6,
                                   int max_T = 3) {
  MsScInstance inst;
  inst.m = rng.Int(1, max_m);
  inst.num_elements = rng.Int(1, max_elements);
  const int T = rng.Int(1, max_T);
  const bool changing_ground = rng.Chance(0.3);
  for (int t = 0; t < T; ++t) {
    std::vector<std::vector<int>> sets(inst.m);
    for (int e = 0; e < inst.num_elements; ++e) {
      bool placed = false;
      for (int i = 0; i < inst.m; ++i) {
        if (rng.Chance(0.35)) {
          sets[i].push_back(e);
          placed = true;
        }
      }
      if (!placed) sets[rng.Int(0, inst.m - 1)].push_back(e);
    }
    inst.sets.push_back(std::move(sets));
    if (changing_ground) {
      std::vector<int> ground;
      for (int e = 0; e < inst.num_elements; ++e) {
        if (rng.Chance(0.7)) ground.push_back(e);
      }
      inst.ground.push_back(std::move(ground));
    }
  }
  inst.weights = IntTable(rng, T, inst.m, 1, 10);
  inst.penalties.resize(inst.m);
  for (double& p : inst.penalties) p = rng.Int(0, 8);
  return inst;
}

template <typename Instance>
Instance RandomPrizeCollecting(Rng& rng, int max_n = 5, int max_T = 3, bool metric = true) {
  Instance inst;
  inst.n = rng.Int(2, max_n);
  const int T = rng.Int(1, max_T);
  const double penalty_scale = rng.Real(10.0, 120.0);
  for (int t = 0; t < T; ++t) {
    inst.costs.push_back(metric ? RandomMetric(rng, inst.n) : RandomWeights(rng, inst.n, 1, 40));
    std::vector<double> pen(inst.n);
    for (double& p : pen) p = rng.Real(0.0, penalty_scale);
    inst.penalties.push_back(std::move(pen));
  }
  inst.w.resize(inst.n);
  const double w_scale = rng.Real(0.0, 60.0);
  for (double& w : inst.w) w = rng.Real(0.0, w_scale);
  return inst;
}

inline MsPcstInstance RandomPcst(Rng& rng, int max_n = 5, int max_T = 3) {
  auto inst = RandomPrizeCollecting<MsPcstInstance>(rng, max_n, max_T, rng.Chance(0.7));
  inst.root = rng.Int(0, inst.n - 1);
  return inst;
}

inline MsPctspInstance RandomPctsp(Rng& rng, int max_n = 5, int max_T = 3) {
  auto inst = RandomPrizeCollecting<MsPctspInstance>(rng, max_n, max_T, true);
  inst.depot = rng.Int(0, inst.n - 1);
  return inst;
}

}  // namespace mstage::testing

#endif  // MSTAGE_TESTS_SUPPORT_RANDOM_HPP_
