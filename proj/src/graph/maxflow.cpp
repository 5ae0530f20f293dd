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
#include <limits>
#include <queue>

#include "mstage/graph.hpp"

namespace mstage {

double Graph::TotalWeight() const {
  double sum = 0.0;
  for (const Edge& e : edges) sum += e.weight;
  return sum;
}

void Graph::Validate() const {
  if (n < 0) throw GraphError("negative vertex count");
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw GraphError("edge endpoint out of range");
    }
    if (e.u == e.v) throw GraphError("self-loop on vertex " + std::to_string(e.u));
    if (!(e.weight >= 0.0)) throw GraphError("negative or NaN edge weight");
  }
}

double InfinitySentinel(double finite_weight_sum) {
  return 4.0 * finite_weight_sum + 1.0;
}

namespace {

// Residual capacities below this are treated as saturated.
constexpr double kFlowEps = 1e-12;

class Dinic {
 public:
  explicit Dinic(int n) : head_(n, -1), level_(n), iter_(n) {}

  // Undirected edge: both arcs carry capacity w.
  void AddUndirected(int u, int v, double w) {
    Add(u, v, w);
    Add(v, u, w);
  }

  double MaxFlow(int s, int t) {
    double flow = 0.0;
    while (Bfs(s, t)) {
      std::copy(head_.begin(), head_.end(), iter_.begin());
      for (;;) {
        double pushed = Dfs(s, t, std::numeric_limits<double>::infinity());
        if (pushed <= kFlowEps) break;
        flow += pushed;
      }
    }
    return flow;
  }

  std::vector<int> Reachable(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int a = head_[u]; a >= 0; a = next_[a]) {
        if (cap_[a] > kFlowEps && !seen[to_[a]]) {
          seen[to_[a]] = 1;
          stack.push_back(to_[a]);
        }
      }
    }
    std::vector<int> side;
    for (size_t v = 0; v < seen.size(); ++v) {
      if (seen[v]) side.push_back(static_cast<int>(v));
    }
    return side;
  }

 private:
  void Add(int u, int v, double w) {
    to_.push_back(v);
    cap_.push_back(w);
    next_.push_back(head_[u]);
    head_[u] = static_cast<int>(to_.size()) - 1;
    to_.push_back(u);
    cap_.push_back(0.0);
    next_.push_back(head_[v]);
    head_[v] = static_cast<int>(to_.size()) - 1;
  }

  bool Bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int a = head_[u]; a >= 0; a = next_[a]) {
        if (cap_[a] > kFlowEps && level_[to_[a]] < 0) {
          level_[to_[a]] = level_[u] + 1;
          q.push(to_[a]);
        }
      }
    }
    return level_[t] >= 0;
  }

  double Dfs(int u, int t, double limit) {
    if (u == t) return limit;
    for (int& a = iter_[u]; a >= 0; a = next_[a]) {
      int v = to_[a];
      if (cap_[a] > kFlowEps && level_[v] == level_[u] + 1) {
        double pushed = Dfs(v, t, std::min(limit, cap_[a]));
        if (pushed > kFlowEps) {
          cap_[a] -= pushed;
          cap_[a ^ 1] += pushed;
          return pushed;
        }
      }
    }
    return 0.0;
  }

  std::vector<int> head_;
  std::vector<int> to_;
  std::vector<int> next_;
  std::vector<double> cap_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace

CutResult MinStCut(const Graph& g, int s, int t) {
  g.Validate();
  if (s < 0 || s >= g.n || t < 0 || t >= g.n) {
    throw GraphError("terminal out of range");
  }
  if (s == t) throw GraphError("source equals sink");
  Dinic dinic(g.n);
  for (const Edge& e : g.edges) dinic.AddUndirected(e.u, e.v, e.weight);
  dinic.MaxFlow(s, t);
  CutResult result;
  result.source_side = dinic.Reachable(s);
  // Report the crossing weight rather than the accumulated flow so the value
  // is exact for integral inputs and consistent with source_side.
  std::vector<char> in_source(g.n, 0);
  for (int v : result.source_side) in_source[v] = 1;
  for (const Edge& e : g.edges) {
    if (in_source[e.u] != in_source[e.v]) result.value += e.weight;
  }
  return result;
}

}  // namespace mstage
