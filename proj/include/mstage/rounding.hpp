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

#ifndef MSTAGE_ROUNDING_HPP_
#define MSTAGE_ROUNDING_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace mstage {

// Values within this distance of a threshold are classified as reaching it
// (>= alpha, <= beta).
inline constexpr double kThresholdEps = 1e-9;

// Thresholds of the two-threshold rounding. Requires 1 >= alpha > beta >= 0.
struct RoundingParams {
  double alpha = 0.75;
  double beta = 0.5;

  void Validate() const;
};

// Range [gamma, 1] from which alpha is drawn, with beta = kappa * alpha.
struct DerandomizationConfig {
  double gamma = 0.0;
  double kappa = 0.0;

  void Validate() const;

  // gamma = e^{-1/3}, kappa = 2/3.
  static DerandomizationConfig SteinerTree();
  // gamma = e^{-2/5}, kappa = 3/5.
  static DerandomizationConfig TravelingSalesman();
};

class ValueOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ThresholdClass : std::uint8_t { kLow, kMiddle, kHigh };

// kHigh for x >= alpha, kLow for x <= beta, kMiddle otherwise.
ThresholdClass Classify(double x, const RoundingParams& p);

// Two-threshold rounding of a time series x^1..x^T:
//   x^t >= alpha -> 1, x^t <= beta -> 0, and each maximal run strictly
//   between the thresholds becomes 1 iff both neighbours of the run are
//   >= alpha (a sequence end counts as such a neighbour), else 0.
std::vector<std::uint8_t> TwoThresholdRound(std::span<const double> x,
                                            const RoundingParams& p);

// sum_t weights[t] * |y[t+1] - y[t]|; weights has length |y| - 1.
double TransitionCount(std::span<const std::uint8_t> y,
                       std::span<const double> weights);
// Unit weights.
double TransitionCount(std::span<const std::uint8_t> y);

enum class CandidateRule {
  // Every v > 0 and every v / kappa inside [gamma, 1], plus gamma and 1.
  kBreakpoints,
  // kBreakpoints plus the midpoint of each gap between consecutive
  // breakpoints. The partition {>= alpha}, {<= kappa*alpha}, {between} is
  // piecewise constant in alpha with jumps only at breakpoints, so this set
  // hits every partition reachable from some alpha in [gamma, 1]. The
  // breakpoints alone miss partitions that exist only on an open gap, e.g.
  // values {0.5, 0.72} with kappa = 2/3 and alpha = 0.73.
  kComplete,
};

// Sorted, deduplicated candidate thresholds for derandomized rounding.
std::vector<double> CandidateAlphas(
    std::span<const double> values, const DerandomizationConfig& cfg,
    CandidateRule rule = CandidateRule::kBreakpoints);

}  // namespace mstage

#endif  // MSTAGE_ROUNDING_HPP_
