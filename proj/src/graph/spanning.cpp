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
#include <limits>
#include <numeric>

#include "mstage/graph.hpp"

namespace mstage {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

std::vector<Edge> MinimumSpanningTree(const Graph& g, std::span<const int> on) {
  g.Validate();
  std::vector<char> member(g.n, 0);
  for (int v : on) member.at(v) = 1;
  std::vector<Edge> candidates;
  for (const Edge& e : g.edges) {
    if (member[e.u] && member[e.v]) candidates.push_back(e);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Edge& a, const Edge& b) { return a.weight < b.weight; });
  DisjointSets sets(g.n);
  std::vector<Edge> tree;
  for (const Edge& e : candidates) {
    if (sets.Union(e.u, e.v)) tree.push_back(e);
  }
  if (!on.empty() && tree.size() + 1 != on.size()) {
    throw SubsetDisconnected("subset does not induce a connected subgraph");
  }
  return tree;
}

std::vector<Edge> MinimumSpanningTree(const CostMatrix& costs,
                                      std::span<const int> on) {
  const int k = static_cast<int>(on.size());
  std::vector<Edge> tree;
  if (k <= 1) return tree;
  std::vector<double> best(k, std::numeric_limits<double>::infinity());
  std::vector<int> link(k, -1);
  std::vector<char> done(k, 0);
  best[0] = 0.0;
  for (int step = 0; step < k; ++step) {
    int pick = -1;
    for (int i = 0; i < k; ++i) {
      if (!done[i] && (pick < 0 || best[i] < best[pick])) pick = i;
    }
    done[pick] = 1;
    if (link[pick] >= 0) {
      tree.push_back({on[link[pick]], on[pick], costs(on[link[pick]], on[pick])});
    }
    for (int i = 0; i < k; ++i) {
      if (done[i]) continue;
      double c = costs(on[pick], on[i]);
      if (c < best[i]) {
        best[i] = c;
        link[i] = pick;
      }
    }
  }
  return tree;
}

bool CheckMetric(const CostMatrix& costs, double tol) {
  const int n = costs.size();
  for (int u = 0; u < n; ++u) {
    if (costs(u, u) != 0.0) return false;
    for (int v = 0; v < n; ++v) {
      if (costs(u, v) < 0.0 || costs(u, v) != costs(v, u)) return false;
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      for (int w = 0; w < n; ++w) {
        if (costs(u, w) > costs(u, v) + costs(v, w) + tol) return false;
      }
    }
  }
  return true;
}

CostMatrix MetricClosure(const CostMatrix& costs) {
  CostMatrix d = costs;
  const int n = d.size();
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d(i, k) + d(k, j) < d(i, j)) d(i, j) = d(i, k) + d(k, j);
      }
    }
  }
  return d;
}

double TourLength(std::span<const int> sequence, const CostMatrix& costs) {
  double length = 0.0;
  for (size_t i = 0; i + 1 < sequence.size(); ++i) {
    length += costs(sequence[i], sequence[i + 1]);
  }
  return length;
}

Tour EulerianShortcutTour(std::span<const Edge> multigraph, int depot,
                          const CostMatrix& costs) {
  const int n = costs.size();
  Tour tour;
  if (multigraph.empty()) {
    tour.sequence = {depot, depot};
    return tour;
  }
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge id)
  for (size_t k = 0; k < multigraph.size(); ++k) {
    const Edge& e = multigraph[k];
    adj.at(e.u).emplace_back(e.v, static_cast<int>(k));
    adj.at(e.v).emplace_back(e.u, static_cast<int>(k));
  }
  for (int v = 0; v < n; ++v) {
    if (adj[v].size() % 2 != 0) {
      throw OddDegreeVertex("vertex " + std::to_string(v) + " has odd degree");
    }
  }
  if (adj.at(depot).empty()) throw Disconnected("depot is not in the multigraph");

  // Hierholzer, iterative.
  std::vector<char> used(multigraph.size(), 0);
  std::vector<size_t> cursor(n, 0);
  std::vector<int> stack{depot};
  std::vector<int> circuit;
  while (!stack.empty()) {
    int u = stack.back();
    while (cursor[u] < adj[u].size() && used[adj[u][cursor[u]].second]) ++cursor[u];
    if (cursor[u] == adj[u].size()) {
      circuit.push_back(u);
      stack.pop_back();
    } else {
      auto [v, k] = adj[u][cursor[u]];
      used[k] = 1;
      stack.push_back(v);
    }
  }
  if (circuit.size() != multigraph.size() + 1) {
    throw Disconnected("multigraph is not connected");
  }
  std::reverse(circuit.begin(), circuit.end());

  std::vector<char> visited(n, 0);
  for (int v : circuit) {
    if (!visited[v]) {
      visited[v] = 1;
      tour.sequence.push_back(v);
    }
  }
  tour.sequence.push_back(depot);
  tour.length = TourLength(tour.sequence, costs);
  return tour;
}

}  // namespace mstage
