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

#include "mstage/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mstage {

void RoundingParams::Validate() const {
  if (!(alpha <= 1.0 && alpha > beta && beta >= 0.0)) {
    throw std::invalid_argument("rounding needs 1 >= alpha > beta >= 0, got alpha=" +
                                std::to_string(alpha) +
                                " beta=" + std::to_string(beta));
  }
}

void DerandomizationConfig::Validate() const {
  if (!(gamma > 0.0 && gamma < 1.0 && kappa > 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("derandomization needs 0 < gamma, kappa < 1");
  }
}

DerandomizationConfig DerandomizationConfig::SteinerTree() {
  return {std::exp(-1.0 / 3.0), 2.0 / 3.0};
}

DerandomizationConfig DerandomizationConfig::TravelingSalesman() {
  return {std::exp(-2.0 / 5.0), 3.0 / 5.0};
}

ThresholdClass Classify(double x, const RoundingParams& p) {
  if (x >= p.alpha - kThresholdEps) return ThresholdClass::kHigh;
  if (x <= p.beta + kThresholdEps) return ThresholdClass::kLow;
  return ThresholdClass::kMiddle;
}

std::vector<std::uint8_t> TwoThresholdRound(std::span<const double> x,
                                            const RoundingParams& p) {
  p.Validate();
  const size_t T = x.size();
  std::vector<ThresholdClass> cls(T);
  for (size_t t = 0; t < T; ++t) {
    if (!(x[t] >= 0.0 && x[t] <= 1.0)) {
      throw ValueOutOfRange("value " + std::to_string(x[t]) + " at step " +
                            std::to_string(t) + " is outside [0, 1]");
    }
    cls[t] = Classify(x[t], p);
  }
  std::vector<std::uint8_t> y(T, 0);
  size_t t = 0;
  while (t < T) {
    if (cls[t] != ThresholdClass::kMiddle) {
      y[t] = cls[t] == ThresholdClass::kHigh ? 1 : 0;
      ++t;
      continue;
    }
    size_t end = t;
    while (end + 1 < T && cls[end + 1] == ThresholdClass::kMiddle) ++end;
    const bool left_ok = t == 0 || cls[t - 1] == ThresholdClass::kHigh;
    const bool right_ok = end + 1 == T || cls[end + 1] == ThresholdClass::kHigh;
    const std::uint8_t fill = left_ok && right_ok ? 1 : 0;
    std::fill(y.begin() + t, y.begin() + end + 1, fill);
    t = end + 1;
  }
  return y;
}

double TransitionCount(std::span<const std::uint8_t> y,
                       std::span<const double> weights) {
  if (y.size() > 1 && weights.size() != y.size() - 1) {
    throw std::invalid_argument("transition weights need one entry per boundary");
  }
  double total = 0.0;
  for (size_t t = 0; t + 1 < y.size(); ++t) {
    if (y[t] != y[t + 1]) total += weights[t];
  }
  return total;
}

double TransitionCount(std::span<const std::uint8_t> y) {
  double total = 0.0;
  for (size_t t = 0; t + 1 < y.size(); ++t) {
    if (y[t] != y[t + 1]) total += 1.0;
  }
  return total;
}

std::vector<double> CandidateAlphas(std::span<const double> values,
                                    const DerandomizationConfig& cfg,
                                    CandidateRule rule) {
  cfg.Validate();
  std::vector<double> out{cfg.gamma, 1.0};
  auto keep = [&](double a) {
    if (a >= cfg.gamma && a <= 1.0) out.push_back(a);
  };
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValueOutOfRange("candidate source value outside [0, 1]");
    }
    if (v <= 0.0) continue;
    keep(v);
    keep(v / cfg.kappa);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (rule == CandidateRule::kComplete) {
    const size_t breakpoints = out.size();
    for (size_t i = 0; i + 1 < breakpoints; ++i) {
      out.push_back(0.5 * (out[i] + out[i + 1]));
    }
    std::sort(out.begin(), out.end());
  }
  return out;
}

}  // namespace mstage
