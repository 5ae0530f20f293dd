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

#ifndef MSTAGE_GRAPH_HPP_
#define MSTAGE_GRAPH_HPP_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mstage {

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected weighted graph. No self-loops, weights >= 0.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::string> labels;  // optional

  Graph() = default;
  explicit Graph(int vertices) : n(vertices) {}

  void AddEdge(int u, int v, double weight) { edges.push_back({u, v, weight}); }
  double TotalWeight() const;
  // Throws GraphError on self-loops, negative weights or bad endpoints.
  void Validate() const;
};

// Dense symmetric cost matrix, used by the metric problems.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(int n, double fill = 0.0)
      : n_(n), data_(static_cast<size_t>(n) * n, fill) {}

  int size() const { return n_; }
  double operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * n_ + j];
  }
  double& operator()(int i, int j) {
    return data_[static_cast<size_t>(i) * n_ + j];
  }
  // Writes both (i, j) and (j, i).
  void Set(int i, int j, double value) {
    (*this)(i, j) = value;
    (*this)(j, i) = value;
  }

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

struct CutResult {
  double value = 0.0;
  std::vector<int> source_side;  // sorted
};

struct Tour {
  // Cyclic sequence starting and ending at the depot. A depot-only tour is
  // {depot, depot}.
  std::vector<int> sequence;
  double length = 0.0;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SubsetDisconnected : public GraphError {
 public:
  using GraphError::GraphError;
};

class OddSubset : public GraphError {
 public:
  using GraphError::GraphError;
};

class OddDegreeVertex : public GraphError {
 public:
  using GraphError::GraphError;
};

class Disconnected : public GraphError {
 public:
  using GraphError::GraphError;
};

// Edges whose weight is at least this value are treated as uncuttable by
// callers that build them with InfinitySentinel().
double InfinitySentinel(double finite_weight_sum);

// Dinic max-flow on the undirected graph; source_side is the residual
// reachability set of s.
CutResult MinStCut(const Graph& g, int s, int t);

// Kruskal over the edges of g whose endpoints both lie in `on`.
std::vector<Edge> MinimumSpanningTree(const Graph& g, std::span<const int> on);
// Prim on the complete graph over `on` with weights from `costs`.
std::vector<Edge> MinimumSpanningTree(const CostMatrix& costs,
                                      std::span<const int> on);

enum class MatchingMode { kExact, kGreedy };

// Minimum-weight perfect matching on the complete graph over `on`. Exact
// mode runs the weighted blossom algorithm; greedy pairs cheapest edges
// first and carries no optimality guarantee.
std::vector<Edge> MinWeightPerfectMatching(const CostMatrix& costs,
                                           std::span<const int> on,
                                           MatchingMode mode = MatchingMode::kExact);

// Maximum-weight matching on a general graph (weighted blossom). With
// max_cardinality the result is a maximum-cardinality matching of maximum
// weight. Returns mate[v] or -1.
std::vector<int> MaxWeightMatching(const Graph& g, bool max_cardinality);

// Euler circuit of the multigraph from `depot`, then skip repeated vertices.
// Tour length is measured with `costs`.
Tour EulerianShortcutTour(std::span<const Edge> multigraph, int depot,
                          const CostMatrix& costs);

bool CheckMetric(const CostMatrix& costs, double tol = 1e-9);

// All-pairs shortest path closure (Floyd-Warshall).
CostMatrix MetricClosure(const CostMatrix& costs);

double TourLength(std::span<const int> sequence, const CostMatrix& costs);

}  // namespace mstage

#endif  // MSTAGE_GRAPH_HPP_
