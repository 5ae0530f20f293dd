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

// Maximum-weight matching in general graphs: Edmonds' blossom algorithm with
// the primal-dual bookkeeping of Galil, "Efficient algorithms for finding
// maximum matching in graphs" (1986). O(n^3).
//
// Endpoint encoding: edge k has endpoints 2k (its u) and 2k+1 (its v);
// endpoint p belongs to vertex endpoint_[p], and p^1 is the opposite end.
// Blossom ids are n..2n-1; ids < n are trivial blossoms (single vertices).

#include <algorithm>
#include <cassert>
#include <numeric>

#include "mstage/graph.hpp"

namespace mstage {

namespace {

class BlossomMatcher {
 public:
  BlossomMatcher(const Graph& g, bool max_cardinality)
      : n_(g.n), edges_(g.edges), max_cardinality_(max_cardinality) {
    const int m = static_cast<int>(edges_.size());
    double max_weight = 0.0;
    for (const Edge& e : edges_) max_weight = std::max(max_weight, e.weight);
    endpoint_.resize(2 * m);
    neighbend_.assign(n_, {});
    for (int k = 0; k < m; ++k) {
      endpoint_[2 * k] = edges_[k].u;
      endpoint_[2 * k + 1] = edges_[k].v;
      neighbend_[edges_[k].u].push_back(2 * k + 1);
      neighbend_[edges_[k].v].push_back(2 * k);
    }
    mate_.assign(n_, -1);
    label_.assign(2 * n_, 0);
    labelend_.assign(2 * n_, -1);
    inblossom_.resize(n_);
    std::iota(inblossom_.begin(), inblossom_.end(), 0);
    blossomparent_.assign(2 * n_, -1);
    blossomchilds_.assign(2 * n_, {});
    blossomendps_.assign(2 * n_, {});
    blossombase_.assign(2 * n_, -1);
    for (int v = 0; v < n_; ++v) blossombase_[v] = v;
    bestedge_.assign(2 * n_, -1);
    blossombestedges_.assign(2 * n_, {});
    has_bestedges_.assign(2 * n_, 0);
    for (int b = 2 * n_ - 1; b >= n_; --b) unusedblossoms_.push_back(b);
    dualvar_.assign(2 * n_, 0.0);
    for (int v = 0; v < n_; ++v) dualvar_[v] = max_weight;
    allowedge_.assign(m, 0);
  }

  std::vector<int> Solve() {
    for (int stage = 0; stage < n_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = n_; b < 2 * n_; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = 0;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), 0);
      queue_.clear();

      for (int v = 0; v < n_; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) AssignLabel(v, 1, -1);
      }

      bool augmented = false;
      for (;;) {
        while (!queue_.empty() && !augmented) {
          int v = queue_.back();
          queue_.pop_back();
          for (int p : neighbend_[v]) {
            int k = p / 2;
            int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            double kslack = 0.0;
            if (!allowedge_[k]) {
              kslack = Slack(k);
              if (kslack <= 0.0) allowedge_[k] = 1;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                AssignLabel(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                int base = ScanBlossom(v, w);
                if (base >= 0) {
                  AddBlossom(base, k);
                } else {
                  AugmentMatching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                // w inside a T-blossom but not yet reached from outside it.
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < Slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < Slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        // Dual adjustment.
        int deltatype = -1;
        double delta = 0.0;
        int deltaedge = -1;
        int deltablossom = -1;
        if (!max_cardinality_) {
          deltatype = 1;
          delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
        }
        for (int v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            double d = Slack(bestedge_[v]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * n_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            double d = Slack(bestedge_[b]) / 2.0;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
              (deltatype == -1 || dualvar_[b] < delta)) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        if (deltatype == -1) {
          // No further improvement possible; optimum reached (only with
          // max_cardinality).
          deltatype = 1;
          delta = std::max(0.0, *std::min_element(dualvar_.begin(),
                                                  dualvar_.begin() + n_));
        }

        for (int v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 1) {
            dualvar_[v] -= delta;
          } else if (label_[inblossom_[v]] == 2) {
            dualvar_[v] += delta;
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) {
              dualvar_[b] += delta;
            } else if (label_[b] == 2) {
              dualvar_[b] -= delta;
            }
          }
        }

        if (deltatype == 1) {
          break;
        } else if (deltatype == 2) {
          allowedge_[deltaedge] = 1;
          int i = edges_[deltaedge].u;
          int j = edges_[deltaedge].v;
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          assert(label_[inblossom_[i]] == 1);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = 1;
          int i = edges_[deltaedge].u;
          assert(label_[inblossom_[i]] == 1);
          queue_.push_back(i);
        } else {
          ExpandBlossom(deltablossom, false);
        }
      }
      if (!augmented) break;

      for (int b = n_; b < 2 * n_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 &&
            dualvar_[b] == 0.0) {
          ExpandBlossom(b, true);
        }
      }
    }

    std::vector<int> mate(n_, -1);
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] >= 0) mate[v] = endpoint_[mate_[v]];
    }
    return mate;
  }

 private:
  double Slack(int k) const {
    return dualvar_[edges_[k].u] + dualvar_[edges_[k].v] - 2.0 * edges_[k].weight;
  }

  void Leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) Leaves(t, out);
  }

  std::vector<int> Leaves(int b) const {
    std::vector<int> out;
    Leaves(b, out);
    return out;
  }

  static int Wrap(int j, int len) { return ((j % len) + len) % len; }

  void AssignLabel(int w, int t, int p) {
    int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      Leaves(b, queue_);
    } else if (t == 2) {
      int base = blossombase_[b];
      AssignLabel(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  int ScanBlossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void AddBlossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    std::vector<int>& path = blossomchilds_[b];
    std::vector<int>& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0.0;
    for (int leaf : Leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }

    std::vector<int> bestedgeto(2 * n_, -1);
    for (int child : path) {
      std::vector<std::vector<int>> nblists;
      if (!has_bestedges_[child]) {
        for (int leaf : Leaves(child)) {
          std::vector<int> list;
          for (int p : neighbend_[leaf]) list.push_back(p / 2);
          nblists.push_back(std::move(list));
        }
      } else {
        nblists.push_back(blossombestedges_[child]);
      }
      for (const auto& nblist : nblists) {
        for (int kk : nblist) {
          int i = edges_[kk].u;
          int j = edges_[kk].v;
          if (inblossom_[j] == b) std::swap(i, j);
          int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 &&
              (bestedgeto[bj] == -1 || Slack(kk) < Slack(bestedgeto[bj]))) {
            bestedgeto[bj] = kk;
          }
        }
      }
      blossombestedges_[child].clear();
      has_bestedges_[child] = 0;
      bestedge_[child] = -1;
    }
    blossombestedges_[b].clear();
    for (int kk : bestedgeto) {
      if (kk != -1) blossombestedges_[b].push_back(kk);
    }
    has_bestedges_[b] = 1;
    bestedge_[b] = -1;
    for (int kk : blossombestedges_[b]) {
      if (bestedge_[b] == -1 || Slack(kk) < Slack(bestedge_[b])) bestedge_[b] = kk;
    }
  }

  void ExpandBlossom(int b, bool endstage) {
    const std::vector<int> childs = blossomchilds_[b];
    for (int s : childs) {
      blossomparent_[s] = -1;
      if (s < n_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0.0) {
        ExpandBlossom(s, endstage);
      } else {
        for (int leaf : Leaves(s)) inblossom_[leaf] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const std::vector<int>& endps = blossomendps_[b];
      const int len = static_cast<int>(childs.size());
      int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      int j = static_cast<int>(
          std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endps[Wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
        AssignLabel(endpoint_[p ^ 1], 2, p);
        allowedge_[endps[Wrap(j - endptrick, len)] / 2] = 1;
        j += jstep;
        p = endps[Wrap(j - endptrick, len)] ^ endptrick;
        allowedge_[p / 2] = 1;
        j += jstep;
      }
      int bv = childs[Wrap(j, len)];
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (childs[Wrap(j, len)] != entrychild) {
        bv = childs[Wrap(j, len)];
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        int reached = -1;
        for (int leaf : Leaves(bv)) {
          if (label_[leaf] != 0) {
            reached = leaf;
            break;
          }
        }
        if (reached >= 0) {
          assert(label_[reached] == 2);
          assert(inblossom_[reached] == bv);
          label_[reached] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          AssignLabel(reached, 2, labelend_[reached]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = 0;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  void AugmentBlossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) AugmentBlossom(t, v);
    std::vector<int>& childs = blossomchilds_[b];
    std::vector<int>& endps = blossomendps_[b];
    const int len = static_cast<int>(childs.size());
    const int i = static_cast<int>(
        std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = childs[Wrap(j, len)];
      int p = endps[Wrap(j - endptrick, len)] ^ endptrick;
      if (t >= n_) AugmentBlossom(t, endpoint_[p]);
      j += jstep;
      t = childs[Wrap(j, len)];
      if (t >= n_) AugmentBlossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
  }

  void AugmentMatching(int k) {
    const int ends[2][2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
    for (const auto& [start, first_p] : ends) {
      int s = start;
      int p = first_p;
      for (;;) {
        int bs = inblossom_[s];
        if (bs >= n_) AugmentBlossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        int t = endpoint_[labelend_[bs]];
        int bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        int j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= n_) AugmentBlossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int n_;
  std::vector<Edge> edges_;
  bool max_cardinality_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> blossombase_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<char> has_bestedges_;
  std::vector<int> unusedblossoms_;
  std::vector<double> dualvar_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
};

}  // namespace

std::vector<int> MaxWeightMatching(const Graph& g, bool max_cardinality) {
  g.Validate();
  if (g.n == 0) return {};
  return BlossomMatcher(g, max_cardinality).Solve();
}

std::vector<Edge> MinWeightPerfectMatching(const CostMatrix& costs,
                                           std::span<const int> on,
                                           MatchingMode mode) {
  const int k = static_cast<int>(on.size());
  if (k % 2 != 0) throw OddSubset("perfect matching needs an even vertex set");
  std::vector<Edge> matching;
  if (k == 0) return matching;

  if (mode == MatchingMode::kGreedy) {
    std::vector<Edge> all;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) all.push_back({on[i], on[j], costs(on[i], on[j])});
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const Edge& a, const Edge& b) { return a.weight < b.weight; });
    std::vector<char> used(costs.size(), 0);
    for (const Edge& e : all) {
      if (!used[e.u] && !used[e.v]) {
        used[e.u] = used[e.v] = 1;
        matching.push_back(e);
      }
    }
    return matching;
  }

  // Max-cardinality max-weight matching on weights (shift - cost); every
  // perfect matching has k/2 edges, so this minimizes total cost.
  double max_cost = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) max_cost = std::max(max_cost, costs(on[i], on[j]));
  }
  const double shift = max_cost + 1.0;
  Graph local(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) local.AddEdge(i, j, shift - costs(on[i], on[j]));
  }
  std::vector<int> mate = MaxWeightMatching(local, /*max_cardinality=*/true);
  for (int i = 0; i < k; ++i) {
    if (mate[i] < 0) throw GraphError("blossom matching is not perfect");
    if (i < mate[i]) matching.push_back({on[i], on[mate[i]], costs(on[i], on[mate[i]])});
  }
  return matching;
}

}  // namespace mstage
