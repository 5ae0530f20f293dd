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


#include "mstage/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace mstage {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void Guard(int items, int steps) {
  if (items > kOracleMaxItems || steps > kOracleMaxSteps) {
    throw InstanceTooLarge("oracle limited to " + std::to_string(kOracleMaxItems) +
                           " vertices or sets and " + std::to_string(kOracleMaxSteps) +
                           " steps");
  }
}

std::vector<std::uint8_t> Bits(std::uint32_t mask, int width) {
  std::vector<std::uint8_t> out(width);
  for (int i = 0; i < width; ++i) out[i] = (mask >> i) & 1u;
  return out;
}

// Padded copy of the transition table with one row per step boundary.
std::vector<std::vector<double>> PerVertexTransition(const std::vector<double>& w, int T) {
  return std::vector<std::vector<double>>(std::max(0, T - 1), w);
}

}  // namespace

RoundedSchedule MinimumCostSchedule(const StateSpace& space,
                                    const std::vector<std::vector<double>>& transition) {
  const int T = static_cast<int>(space.states.size());
  std::vector<std::vector<double>> best(T);
  std::vector<std::vector<int>> parent(T);
  for (int t = 0; t < T; ++t) {
    const size_t k = space.states[t].size();
    if (k == 0) throw SolverError("no feasible decision at step " + std::to_string(t));
    best[t].assign(k, kInf);
    parent[t].assign(k, -1);
  }
  for (size_t k = 0; k < space.states[0].size(); ++k) best[0][k] = space.cost[0][k].Total();
  for (int t = 1; t < T; ++t) {
    for (size_t b = 0; b < space.states[t].size(); ++b) {
      const auto& to = space.states[t][b];
      for (size_t a = 0; a < space.states[t - 1].size(); ++a) {
        const auto& from = space.states[t - 1][a];
        double flip = 0.0;
        for (size_t i = 0; i < to.size(); ++i) {
          if (from[i] != to[i]) flip += transition[t - 1][i];
        }
        const double value = best[t - 1][a] + flip;
        if (value < best[t][b]) {
          best[t][b] = value;
          parent[t][b] = static_cast<int>(a);
        }
      }
      best[t][b] += space.cost[t][b].Total();
    }
  }
  int k = static_cast<int>(std::min_element(best[T - 1].begin(), best[T - 1].end()) -
                           best[T - 1].begin());
  RoundedSchedule schedule;
  schedule.decisions.resize(T);
  for (int t = T - 1; t >= 0; --t) {
    schedule.decisions[t] = space.states[t][k];
    schedule.cost.step += space.cost[t][k].step;
    schedule.cost.penalty += space.cost[t][k].penalty;
    k = parent[t][k];
  }
  for (int t = 0; t + 1 < T; ++t) {
    for (size_t i = 0; i < schedule.decisions[t].size(); ++i) {
      if (schedule.decisions[t][i] != schedule.decisions[t + 1][i]) {
        schedule.cost.transition += transition[t][i];
      }
    }
  }
  schedule.info.algorithm = "brute_force";
  schedule.info.mode = "exact";
  return schedule;
}

RoundedSchedule BruteForceSchedule(const MsCutInstance& inst) {
  inst.Validate();
  Guard(inst.n, inst.T());
  StateSpace space;
  space.states.resize(inst.T());
  space.cost.resize(inst.T());
  for (int t = 0; t < inst.T(); ++t) {
    for (std::uint32_t mask = 0; mask < (1u << inst.n); ++mask) {
      auto side = Bits(mask, inst.n);
      if (!side[inst.source] || side[inst.sink]) continue;
      CostBreakdown c;
      for (const Edge& e : inst.steps[t]) {
        if (side[e.u] != side[e.v]) c.step += e.weight;
      }
      space.states[t].push_back(std::move(side));
      space.cost[t].push_back(c);
    }
  }
  return MinimumCostSchedule(space, inst.transition);
}

RoundedSchedule BruteForceSchedule(const MsVcInstance& inst) {
  inst.Validate();
  Guard(inst.n, inst.T());
  StateSpace space;
  space.states.resize(inst.T());
  space.cost.resize(inst.T());
  for (int t = 0; t < inst.T(); ++t) {
    for (std::uint32_t mask = 0; mask < (1u << inst.n); ++mask) {
      auto cover = Bits(mask, inst.n);
      if (!IsCover(inst, t, cover)) continue;
      CostBreakdown c;
      for (int v = 0; v < inst.n; ++v) {
        if (cover[v]) c.step += inst.weights[t][v];
      }
      space.states[t].push_back(std::move(cover));
      space.cost[t].push_back(c);
    }
  }
  return MinimumCostSchedule(space, inst.transition);
}

RoundedSchedule BruteForceSchedule(const MsScInstance& inst) {
  Frequency(inst);
  Guard(inst.m, inst.T());
  StateSpace space;
  space.states.resize(inst.T());
  space.cost.resize(inst.T());
  for (int t = 0; t < inst.T(); ++t) {
    for (std::uint32_t mask = 0; mask < (1u << inst.m); ++mask) {
      auto chosen = Bits(mask, inst.m);
      if (!CoversStep(inst, t, chosen)) continue;
      CostBreakdown c;
      for (int i = 0; i < inst.m; ++i) {
        if (chosen[i]) c.step += inst.weights[t][i];
      }
      space.states[t].push_back(std::move(chosen));
      space.cost[t].push_back(c);
    }
  }
  return MinimumCostSchedule(space, PerVertexTransition(inst.penalties, inst.T()));
}

namespace {

// Decision vectors with the fixed vertex set to 1; step cost from
// `connect` plus penalties of the vertices left out.
template <typename Connect>
StateSpace PrizeCollectingSpace(int n, int fixed, int T,
                                const std::vector<std::vector<double>>& penalties,
                                Connect connect) {
  StateSpace space;
  space.states.resize(T);
  space.cost.resize(T);
  for (int t = 0; t < T; ++t) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (!((mask >> fixed) & 1u)) continue;
      auto chosen = Bits(mask, n);
      std::vector<int> members;
      CostBreakdown c;
      for (int v = 0; v < n; ++v) {
        if (chosen[v]) {
          members.push_back(v);
        } else {
          c.penalty += penalties[t][v];
        }
      }
      c.step = connect(t, members);
      space.states[t].push_back(std::move(chosen));
      space.cost[t].push_back(c);
    }
  }
  return space;
}

}  // namespace

RoundedSchedule BruteForceSchedule(const MsPcstInstance& inst) {
  inst.Validate();
  Guard(inst.n, inst.T());
  auto space = PrizeCollectingSpace(
      inst.n, inst.root, inst.T(), inst.penalties,
      [&](int t, const std::vector<int>& members) {
        return ExactSteiner(inst.costs[t], inst.root, members);
      });
  return MinimumCostSchedule(space, PerVertexTransition(inst.w, inst.T()));
}

RoundedSchedule BruteForceSchedule(const MsPctspInstance& inst) {
  inst.Validate();
  Guard(inst.n, inst.T());
  auto space = PrizeCollectingSpace(
      inst.n, inst.depot, inst.T(), inst.penalties,
      [&](int t, const std::vector<int>& members) {
        return ExactTsp(inst.costs[t], members, inst.depot);
      });
  return MinimumCostSchedule(space, PerVertexTransition(inst.w, inst.T()));
}

double ExactSteiner(const CostMatrix& costs, int root, const std::vector<int>& terminals) {
  const int n = costs.size();
  if (n > kOracleMaxItems) throw InstanceTooLarge("exact Steiner limited to 7 vertices");
  std::vector<int> keys;
  for (int v : terminals) {
    if (v != root && std::find(keys.begin(), keys.end(), v) == keys.end()) keys.push_back(v);
  }
  const int k = static_cast<int>(keys.size());
  if (k == 0) return 0.0;
  const CostMatrix dist = MetricClosure(costs);
  const std::uint32_t full = (1u << k) - 1;
  std::vector<std::vector<double>> dp(full + 1, std::vector<double>(n, kInf));
  for (int i = 0; i < k; ++i) {
    for (int v = 0; v < n; ++v) dp[1u << i][v] = dist(keys[i], v);
  }
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    for (int v = 0; v < n; ++v) {
      for (std::uint32_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
        dp[mask][v] = std::min(dp[mask][v], dp[sub][v] + dp[mask ^ sub][v]);
      }
    }
    std::vector<double> joined = dp[mask];
    for (int v = 0; v < n; ++v) {
      for (int u = 0; u < n; ++u) joined[v] = std::min(joined[v], dp[mask][u] + dist(u, v));
    }
    dp[mask] = std::move(joined);
  }
  return dp[full][root];
}

double SteinerByEdgeSubsets(const CostMatrix& costs, int root,
                            const std::vector<int>& terminals) {
  const int n = costs.size();
  if (n > kOracleMaxItems) throw InstanceTooLarge("edge enumeration limited to 7 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  const int m = static_cast<int>(edges.size());
  double best = kInf;
  std::vector<int> parent(n);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    double cost = 0.0;
    std::iota(parent.begin(), parent.end(), 0);
    for (int e = 0; e < m; ++e) {
      if (!((mask >> e) & 1u)) continue;
      cost += costs(edges[e].first, edges[e].second);
      parent[find(edges[e].first)] = find(edges[e].second);
    }
    if (cost >= best) continue;
    bool joined = true;
    for (int v : terminals) joined = joined && find(v) == find(root);
    if (joined) best = cost;
  }
  return best;
}

double ExactTsp(const CostMatrix& costs, const std::vector<int>& subset, int depot) {
  if (static_cast<int>(subset.size()) > kExactTspMaxSubset) {
    throw InstanceTooLarge("exact TSP limited to 10 vertices");
  }
  if (std::find(subset.begin(), subset.end(), depot) == subset.end()) {
    throw GraphError("tour subset must contain the depot");
  }
  std::vector<int> others;
  for (int v : subset) {
    if (v != depot && std::find(others.begin(), others.end(), v) == others.end()) {
      others.push_back(v);
    }
  }
  const int k = static_cast<int>(others.size());
  if (k == 0) return 0.0;
  const std::uint32_t full = (1u << k) - 1;
  // dp[mask][j]: shortest path from the depot through mask ending at others[j].
  std::vector<std::vector<double>> dp(full + 1, std::vector<double>(k, kInf));
  for (int j = 0; j < k; ++j) dp[1u << j][j] = costs(depot, others[j]);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int j = 0; j < k; ++j) {
      if (!((mask >> j) & 1u) || dp[mask][j] == kInf) continue;
      for (int next = 0; next < k; ++next) {
        if ((mask >> next) & 1u) continue;
        const std::uint32_t grown = mask | (1u << next);
        dp[grown][next] =
            std::min(dp[grown][next], dp[mask][j] + costs(others[j], others[next]));
      }
    }
  }
  double best = kInf;
  for (int j = 0; j < k; ++j) best = std::min(best, dp[full][j] + costs(others[j], depot));
  return best;
}

double TspByPermutations(const CostMatrix& costs, const std::vector<int>& subset,
                         int depot) {
  std::vector<int> others;
  for (int v : subset) {
    if (v != depot) others.push_back(v);
  }
  std::sort(others.begin(), others.end());
  others.erase(std::unique(others.begin(), others.end()), others.end());
  if (others.empty()) return 0.0;
  double best = kInf;
  do {
    double length = costs(depot, others.front()) + costs(others.back(), depot);
    for (size_t i = 0; i + 1 < others.size(); ++i) length += costs(others[i], others[i + 1]);
    best = std::min(best, length);
  } while (std::next_permutation(others.begin(), others.end()));
  return best;
}

}  // namespace mstage
