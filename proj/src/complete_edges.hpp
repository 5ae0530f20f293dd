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


#ifndef MSTAGE_SRC_COMPLETE_EDGES_HPP_
#define MSTAGE_SRC_COMPLETE_EDGES_HPP_

#include <utility>
#include <vector>

namespace mstage::internal {

// Edges (u, v), u < v, of the complete graph on n vertices in
// lexicographic order, plus the reverse lookup.
class CompleteEdges {
 public:
  explicit CompleteEdges(int n) : n_(n), index_(static_cast<size_t>(n) * n, -1) {
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        index_[static_cast<size_t>(u) * n + v] = static_cast<int>(edges_.size());
        index_[static_cast<size_t>(v) * n + u] = static_cast<int>(edges_.size());
        edges_.emplace_back(u, v);
      }
    }
  }

  int size() const { return static_cast<int>(edges_.size()); }
  const std::pair<int, int>& operator[](int k) const { return edges_[k]; }
  int Index(int u, int v) const { return index_[static_cast<size_t>(u) * n_ + v]; }

  // Edge ids crossing the vertex set given by the membership mask.
  std::vector<int> Crossing(const std::vector<char>& in_set) const {
    std::vector<int> out;
    for (int k = 0; k < size(); ++k) {
      if (in_set[edges_[k].first] != in_set[edges_[k].second]) out.push_back(k);
    }
    return out;
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> index_;
};

}  // namespace mstage::internal

#endif  // MSTAGE_SRC_COMPLETE_EDGES_HPP_
