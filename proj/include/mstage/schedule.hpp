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

#ifndef MSTAGE_SCHEDULE_HPP_
#define MSTAGE_SCHEDULE_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mstage/graph.hpp"

namespace mstage {

struct CostBreakdown {
  double step = 0.0;        // edges, sets, vertex weights, cuts or tours
  double penalty = 0.0;     // prize-collecting penalties
  double transition = 0.0;  // decision flips between consecutive steps

  double Total() const { return step + penalty + transition; }
};

// How a schedule was produced; copied verbatim into the report.
struct SolveInfo {
  std::string algorithm;
  std::string mode;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<int> f;
  std::optional<double> lp_value;
  int lp_rounds = 0;
  bool lp_certified = true;
  std::string path;      // e.g. "half_integral" or "rs_fallback"
  std::string matching;  // "exact" or "greedy" for tour problems
  std::vector<std::string> flags;
};

// Per-step binary decisions plus the structures they realize.
struct RoundedSchedule {
  // decisions[t][i]: vertex on the source side (mincut), vertex in the cover
  // (vertexcover), set chosen (setcover), vertex connected or visited
  // (pcst, pctsp; the root/depot is always 1).
  std::vector<std::vector<std::uint8_t>> decisions;
  std::vector<std::vector<Edge>> trees;  // pcst
  std::vector<Tour> tours;               // pctsp
  CostBreakdown cost;
  SolveInfo info;
};

// Optimal LP point, split per step.
struct FractionalSolution {
  std::vector<std::vector<double>> x;  // edge / set / vertex variables
  std::vector<std::vector<double>> s;  // vertex connection variables
  std::vector<std::vector<double>> z;  // transition variables, T-1 rows
  double lp_value = 0.0;
  CostBreakdown parts;              // LP objective split like CostBreakdown
  std::vector<double> step_parts;   // LP step cost per time step
  int rounds = 0;
  bool certified = true;
};

// Threshold selection for the prize-collecting solvers.
enum class RoundingMode {
  kFixed,         // constant (alpha, beta)
  kDerandomized,  // best schedule over the candidate thresholds
};

const char* ToString(RoundingMode mode);

class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mstage

#endif  // MSTAGE_SCHEDULE_HPP_
