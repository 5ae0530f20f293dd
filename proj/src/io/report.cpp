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


#include <chrono>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "mstage/io.hpp"
#include "mstage/oracle.hpp"

namespace mstage {

using Json = nlohmann::ordered_json;

std::optional<double> Ratio(double cost, double reference) {
  constexpr double kZero = 1e-9;
  if (std::abs(reference) <= kZero) {
    if (std::abs(cost) <= kZero) return 1.0;
    return std::nullopt;
  }
  return cost / reference;
}

namespace {

double Bound(Problem problem, const SolveInfo& info) {
  switch (problem) {
    case Problem::kMinCut:
      return 1.0;
    case Problem::kVertexCover:
      return info.path == "rs_fallback" ? 4.0 : 2.0;
    case Problem::kSetCover:
      return 2.0 * info.f.value_or(1);
    case Problem::kPcst:
      return info.mode == "derandomized" ? 3.53 : 4.0;
    case Problem::kPctsp:
      return info.mode == "derandomized" ? 3.034 : 3.5;
  }
  return 1.0;
}

RoundedSchedule Dispatch(const InstanceFile& file, const SolveRequest& request) {
  return std::visit(
      [&](const auto& inst) -> RoundedSchedule {
        using I = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<I, MsCutInstance>) {
          return SolveMsMinCut(inst);
        } else if constexpr (std::is_same_v<I, MsVcInstance>) {
          return SolveMsVertexCover(inst, request.lp);
        } else if constexpr (std::is_same_v<I, MsScInstance>) {
          return SolveMsSetCover(inst, request.lp);
        } else if constexpr (std::is_same_v<I, MsPcstInstance>) {
          PcstLpOptions options;
          options.lp = request.lp;
          return SolveMsPcst(inst, request.mode, options);
        } else {
          PctspLpOptions options;
          options.lp = request.lp;
          return SolveMsPctsp(inst, request.mode, request.matching, options);
        }
      },
      file.instance);
}

RoundedSchedule Oracle(const InstanceFile& file) {
  return std::visit([](const auto& inst) { return BruteForceSchedule(inst); },
                    file.instance);
}

SolveReport Wrap(const InstanceFile& file, RoundedSchedule schedule) {
  SolveReport report;
  report.instance_id = file.id;
  report.problem = ToString(file.problem);
  report.cost = schedule.cost;
  report.decisions = std::move(schedule.decisions);
  report.info = std::move(schedule.info);
  if (report.info.lp_value) report.ratio_vs_lp = Ratio(report.cost.Total(), *report.info.lp_value);
  report.bound = Bound(file.problem, report.info);
  return report;
}

double ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

Json Optional(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

SolveReport Solve(const InstanceFile& file, const SolveRequest& request) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport report = Wrap(file, Dispatch(file, request));
  report.wall_ms = ElapsedMs(start);
  if (request.with_oracle) {
    const double optimum = Oracle(file).cost.Total();
    report.oracle_value = optimum;
    report.ratio_vs_oracle = Ratio(report.cost.Total(), optimum);
  }
  return report;
}

SolveReport SolveOracle(const InstanceFile& file) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport report = Wrap(file, Oracle(file));
  report.wall_ms = ElapsedMs(start);
  report.oracle_value = report.cost.Total();
  report.ratio_vs_oracle = 1.0;
  return report;
}

std::string ReportToJson(const SolveReport& report, bool include_timing) {
  Json j;
  j["instance_id"] = report.instance_id;
  j["problem"] = report.problem;
  j["algorithm"] = report.info.algorithm;
  j["mode"] = report.info.mode;
  j["alpha"] = Optional(report.info.alpha);
  j["beta"] = Optional(report.info.beta);
  j["gamma"] = Optional(report.info.gamma);
  j["f"] = report.info.f ? Json(*report.info.f) : Json(nullptr);
  j["lp_value"] = Optional(report.info.lp_value);
  j["lp_rounds"] = report.info.lp_rounds;
  j["lp_certified"] = report.info.lp_certified;
  j["cost"] = {{"step", report.cost.step},
               {"penalty", report.cost.penalty},
               {"transition", report.cost.transition},
               {"total", report.cost.Total()}};
  j["ratio_vs_lp"] = Optional(report.ratio_vs_lp);
  j["oracle_value"] = Optional(report.oracle_value);
  j["ratio_vs_oracle"] = Optional(report.ratio_vs_oracle);
  j["bound"] = report.bound;
  j["path"] = report.info.path;
  j["matching"] = report.info.matching;
  j["flags"] = report.info.flags;
  if (include_timing) j["wall_ms"] = report.wall_ms;
  j["decisions"] = report.decisions;
  return j.dump(2) + "\n";
}

}  // namespace mstage
