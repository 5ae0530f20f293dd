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


#ifndef MSTAGE_IO_HPP_
#define MSTAGE_IO_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mstage/mincut.hpp"
#include "mstage/pcst.hpp"
#include "mstage/pctsp.hpp"
#include "mstage/schedule.hpp"
#include "mstage/set_cover.hpp"
#include "mstage/vertex_cover.hpp"

namespace mstage {

enum class Problem { kMinCut, kVertexCover, kSetCover, kPcst, kPctsp };

const char* ToString(Problem problem);
// Throws std::invalid_argument on an unknown tag.
Problem ParseProblem(std::string_view tag);

using AnyInstance = std::variant<MsCutInstance, MsVcInstance, MsScInstance,
                                 MsPcstInstance, MsPctspInstance>;

struct InstanceFile {
  Problem problem = Problem::kMinCut;
  std::string id;
  AnyInstance instance;
  std::string metadata_json = "{}";  // free-form object, kept verbatim
};

// Wrong JSON shape or type. path is a JSON pointer, e.g. "/steps/1/0".
class SchemaError : public std::invalid_argument {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : std::invalid_argument(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Well-formed JSON that breaks an instance invariant; field names it.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(const std::string& field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

InstanceFile ParseInstance(std::string_view text);
std::string SerializeInstance(const InstanceFile& file);

InstanceFile ReadInstanceFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

// Deterministic per (problem, n, T, seed, volatility); see docs/instance_format.md
// for the value ranges.
InstanceFile GenerateInstance(Problem problem, int n, int T, std::uint64_t seed,
                              double volatility);

struct SolveReport {
  std::string instance_id;
  std::string problem;
  SolveInfo info;
  CostBreakdown cost;
  std::optional<double> ratio_vs_lp;
  std::optional<double> oracle_value;
  std::optional<double> ratio_vs_oracle;
  double bound = 1.0;  // guarantee of the algorithm that produced the schedule
  double wall_ms = 0.0;
  std::vector<std::vector<std::uint8_t>> decisions;
};

// cost / reference, 1 when both are zero, nullopt when only the reference is.
std::optional<double> Ratio(double cost, double reference);

struct SolveRequest {
  RoundingMode mode = RoundingMode::kFixed;
  MatchingMode matching = MatchingMode::kExact;
  bool with_oracle = false;
  LpOptions lp = LpOptions::FromEnvironment();
};

SolveReport Solve(const InstanceFile& file, const SolveRequest& request);
SolveReport SolveOracle(const InstanceFile& file);

// Stable key order, fixed number formatting.
std::string ReportToJson(const SolveReport& report, bool include_timing = true);

}  // namespace mstage

#endif  // MSTAGE_IO_HPP_
