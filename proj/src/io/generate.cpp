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


// Synthetic instances. Value ranges (all draws uniform):
//   mincut, vertexcover: each vertex pair is an edge with probability 1/2;
//     costs and vertex weights are integers in [1, 10]; transition weights
//     are integers in [0, 5].
//   setcover: n sets over n elements, every element in 1..3 sets; weights
//     are integers in [1, 10], penalties integers in [0, 5].
//   pcst, pctsp: points in [0, 100]^2 with Euclidean costs; penalties in
//     [0, 60); w in [0, 30); root/depot is vertex 0.
// Between steps each edge flag, cost, weight, membership and penalty is
// redrawn with probability `volatility`, and every point moves by up to
// 20 * volatility per coordinate. volatility 0 repeats step 0.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "json.hpp"
#include "mstage/io.hpp"

namespace mstage {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  // Uniform in [0, 1) from the top 53 bits, identical on every platform.
  double Unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double Real(double lo, double hi) { return lo + (hi - lo) * Unit(); }
  int Int(int lo, int hi) {
    return lo + std::min(hi - lo, static_cast<int>(Unit() * (hi - lo + 1)));
  }
  bool Chance(double p) { return Unit() < p; }

 private:
  std::mt19937_64 rng_;
};

std::vector<std::vector<double>> IntTable(Draw& draw, int rows, int cols, int lo, int hi) {
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols));
  for (auto& row : out) {
    for (double& v : row) v = draw.Int(lo, hi);
  }
  return out;
}

// Per-step edge flags and costs over all vertex pairs.
struct PairSeries {
  std::vector<std::vector<char>> present;    // [t][pair]
  std::vector<std::vector<double>> cost;     // [t][pair]
};

PairSeries EvolvePairs(Draw& draw, int pairs, int T, double volatility) {
  PairSeries s;
  s.present.assign(T, std::vector<char>(pairs));
  s.cost.assign(T, std::vector<double>(pairs));
  for (int k = 0; k < pairs; ++k) {
    s.present[0][k] = draw.Chance(0.5);
    s.cost[0][k] = draw.Int(1, 10);
  }
  for (int t = 1; t < T; ++t) {
    for (int k = 0; k < pairs; ++k) {
      s.present[t][k] = draw.Chance(volatility) ? draw.Chance(0.5) : s.present[t - 1][k];
      s.cost[t][k] = draw.Chance(volatility) ? draw.Int(1, 10) : s.cost[t - 1][k];
    }
  }
  return s;
}

std::vector<std::vector<double>> EvolveInts(Draw& draw, int T, int cols, int lo, int hi,
                                            double volatility) {
  std::vector<std::vector<double>> out(T, std::vector<double>(cols));
  for (int i = 0; i < cols; ++i) out[0][i] = draw.Int(lo, hi);
  for (int t = 1; t < T; ++t) {
    for (int i = 0; i < cols; ++i) {
      out[t][i] = draw.Chance(volatility) ? draw.Int(lo, hi) : out[t - 1][i];
    }
  }
  return out;
}

std::vector<std::pair<int, int>> PairList(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  return pairs;
}

template <typename Instance>
Instance PlanarInstance(Draw& draw, int n, int T, double volatility) {
  Instance inst;
  inst.n = n;
  std::vector<double> x(n), y(n);
  for (int v = 0; v < n; ++v) {
    x[v] = draw.Real(0.0, 100.0);
    y[v] = draw.Real(0.0, 100.0);
  }
  std::vector<double> pen(n);
  for (int v = 0; v < n; ++v) pen[v] = v == 0 ? 0.0 : draw.Real(0.0, 60.0);
  for (int t = 0; t < T; ++t) {
    if (t > 0) {
      for (int v = 0; v < n; ++v) {
        x[v] += 20.0 * volatility * draw.Real(-1.0, 1.0);
        y[v] += 20.0 * volatility * draw.Real(-1.0, 1.0);
        if (v != 0 && draw.Chance(volatility)) pen[v] = draw.Real(0.0, 60.0);
      }
    }
    CostMatrix c(n);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) c.Set(u, v, std::hypot(x[u] - x[v], y[u] - y[v]));
    }
    inst.costs.push_back(std::move(c));
    inst.penalties.push_back(pen);
  }
  inst.w.resize(n);
  for (int v = 0; v < n; ++v) inst.w[v] = v == 0 ? 0.0 : draw.Real(0.0, 30.0);
  return inst;
}

}  // namespace

InstanceFile GenerateInstance(Problem problem, int n, int T, std::uint64_t seed,
                              double volatility) {
  if (n < 2 || T < 1) throw std::invalid_argument("generator needs n >= 2 and T >= 1");
  if (!(volatility >= 0.0 && volatility <= 1.0)) {
    throw std::invalid_argument("volatility must lie in [0, 1]");
  }
  Draw draw(seed);
  InstanceFile file;
  file.problem = problem;
  file.id = std::string(ToString(problem)) + "_n" + std::to_string(n) + "_T" +
            std::to_string(T) + "_s" + std::to_string(seed);
  nlohmann::ordered_json meta;
  meta["generator"] = "mstage gen";
  meta["seed"] = seed;
  meta["n"] = n;
  meta["T"] = T;
  meta["volatility"] = volatility;
  file.metadata_json = meta.dump();

  const auto pairs = PairList(n);
  switch (problem) {
    case Problem::kMinCut: {
      MsCutInstance inst;
      inst.n = n;
      inst.source = 0;
      inst.sink = n - 1;
      PairSeries s = EvolvePairs(draw, static_cast<int>(pairs.size()), T, volatility);
      for (int t = 0; t < T; ++t) {
        std::vector<Edge> edges;
        for (size_t k = 0; k < pairs.size(); ++k) {
          if (s.present[t][k]) edges.push_back({pairs[k].first, pairs[k].second, s.cost[t][k]});
        }
        inst.steps.push_back(std::move(edges));
      }
      inst.transition = IntTable(draw, T - 1, n, 0, 5);
      file.instance = std::move(inst);
      break;
    }
    case Problem::kVertexCover: {
      MsVcInstance inst;
      inst.n = n;
      PairSeries s = EvolvePairs(draw, static_cast<int>(pairs.size()), T, volatility);
      for (int t = 0; t < T; ++t) {
        std::vector<std::pair<int, int>> edges;
        for (size_t k = 0; k < pairs.size(); ++k) {
          if (s.present[t][k]) edges.push_back(pairs[k]);
        }
        inst.edges.push_back(std::move(edges));
      }
      inst.weights = EvolveInts(draw, T, n, 1, 10, volatility);
      inst.transition = IntTable(draw, T - 1, n, 0, 5);
      file.instance = std::move(inst);
      break;
    }
    case Problem::kSetCover: {
      MsScInstance inst;
      inst.m = n;
      inst.num_elements = n;
      const int max_f = std::min(3, n);
      // owners[e]: sets holding element e at the current step.
      std::vector<std::vector<int>> owners(n);
      auto redraw = [&](int e) {
        const int k = draw.Int(1, max_f);
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        owners[e].clear();
        for (int j = 0; j < k; ++j) {
          const int pick = draw.Int(j, n - 1);
          std::swap(pool[j], pool[pick]);
          owners[e].push_back(pool[j]);
        }
        std::sort(owners[e].begin(), owners[e].end());
      };
      for (int e = 0; e < n; ++e) redraw(e);
      for (int t = 0; t < T; ++t) {
        if (t > 0) {
          for (int e = 0; e < n; ++e) {
            if (draw.Chance(volatility)) redraw(e);
          }
        }
        std::vector<std::vector<int>> sets(n);
        for (int e = 0; e < n; ++e) {
          for (int i : owners[e]) sets[i].push_back(e);
        }
        inst.sets.push_back(std::move(sets));
      }
      inst.weights = EvolveInts(draw, T, n, 1, 10, volatility);
      inst.penalties.resize(n);
      for (double& p : inst.penalties) p = draw.Int(0, 5);
      file.instance = std::move(inst);
      break;
    }
    case Problem::kPcst: {
      auto inst = PlanarInstance<MsPcstInstance>(draw, n, T, volatility);
      inst.root = 0;
      file.instance = std::move(inst);
      break;
    }
    case Problem::kPctsp: {
      auto inst = PlanarInstance<MsPctspInstance>(draw, n, T, volatility);
      inst.depot = 0;
      file.instance = std::move(inst);
      break;
    }
  }
  return file;
}

}  // namespace mstage
