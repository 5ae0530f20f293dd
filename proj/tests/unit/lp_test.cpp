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


#include <cstdlib>

#include "doctest.h"
#include "mstage/lp.hpp"
#include "mstage/set_cover.hpp"
#include "support/lp_vertices.hpp"
#include "support/random.hpp"

namespace mstage {
namespace {

using testing::EnumerateVertices;
using testing::Rng;
using testing::TightRank;

LpModel RandomModel(Rng& rng) {
  const int n = rng.Int(2, 5);
  LpModel model(n);
  for (int j = 0; j < n; ++j) {
    model.objective[j] = rng.Int(-5, 5);
    if (rng.Chance(0.3)) model.upper[j] = rng.Int(1, 3);
  }
  const int m = rng.Int(1, 4);
  for (int i = 0; i < m; ++i) {
    LpRow row;
    for (int j = 0; j < n; ++j) {
      if (rng.Chance(0.7)) row.terms.push_back({j, static_cast<double>(rng.Int(-3, 3))});
    }
    const int rel = rng.Int(0, 5);
    row.relation = rel < 3 ? Relation::kGreaterEqual
                           : (rel < 5 ? Relation::kLessEqual : Relation::kEqual);
    row.rhs = rng.Int(-2, 3);
    model.AddRow(std::move(row));
  }
  return model;
}

TEST_CASE("single variable bound row") {
  LpModel model(1);
  model.objective = {1.0};
  model.AddRow({{{0, 1.0}}, Relation::kGreaterEqual, 0.5});
  LpSolution sol = SolveLp(model);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.values[0] == doctest::Approx(0.5));
  CHECK(sol.objective_value == doctest::Approx(0.5));
}

TEST_CASE("solution on a simplex face is a vertex") {
  LpModel model(2);
  model.objective = {1.0, 1.0};
  model.AddRow({{{0, 1.0}, {1, 1.0}}, Relation::kGreaterEqual, 1.0});
  LpSolution sol = SolveLp(model);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective_value == doctest::Approx(1.0));
  const bool corner = (sol.values[0] == 1.0 && sol.values[1] == 0.0) ||
                      (sol.values[0] == 0.0 && sol.values[1] == 1.0);
  CHECK(corner);
}

TEST_CASE("infeasible and unbounded models") {
  LpModel infeasible(1);
  infeasible.AddRow({{{0, 1.0}}, Relation::kGreaterEqual, 2.0});
  CHECK(SolveLp(infeasible).status == LpStatus::kInfeasible);

  LpModel unbounded(1);
  unbounded.objective = {-1.0};
  unbounded.upper = {kInfinity};
  CHECK(SolveLp(unbounded).status == LpStatus::kUnbounded);
}

TEST_CASE("malformed models are rejected") {
  LpModel model(2);
  model.AddRow({{{2, 1.0}}, Relation::kGreaterEqual, 1.0});
  CHECK_THROWS_AS(SolveLp(model), MalformedModel);
  LpModel crossed(1);
  crossed.lower = {1.0};
  crossed.upper = {0.0};
  CHECK_THROWS_AS(SolveLp(crossed), MalformedModel);
  LpModel short_objective(2);
  short_objective.objective.pop_back();
  CHECK_THROWS_AS(SolveLp(short_objective), MalformedModel);
}

TEST_CASE("set cover LP matches vertex enumeration") {
  // Elements {a, b}; S1 = {a}, S2 = {a, b}, S3 = {b}; one step.
  MsScInstance inst;
  inst.m = 3;
  inst.num_elements = 2;
  inst.sets = {{{0}, {0, 1}, {1}}};
  inst.weights = {{1.0, 1.0, 1.0}};
  inst.penalties = {10.0, 10.0, 10.0};
  LpModel model = BuildSetCoverLp(inst);
  auto oracle = EnumerateVertices(model);
  REQUIRE(oracle);
  LpSolution sol = SolveLp(model);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective_value == doctest::Approx(oracle->value).epsilon(1e-9));
  CHECK(sol.objective_value == doctest::Approx(1.0));
}

TEST_CASE("random small LPs match vertex enumeration") {
  Rng rng(20261016);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LpModel model = RandomModel(rng);
    auto oracle = EnumerateVertices(model);
    for (Arithmetic arithmetic : {Arithmetic::kDouble, Arithmetic::kExact}) {
      LpOptions options;
      options.arithmetic = arithmetic;
      LpSolution sol = SolveLp(model, options);
      if (!oracle) {
        CHECK(sol.status == LpStatus::kInfeasible);
        continue;
      }
      REQUIRE(sol.status == LpStatus::kOptimal);
      CHECK(sol.objective_value == doctest::Approx(oracle->value).epsilon(1e-7));
      CHECK(testing::Feasible(model, sol.values));
      CHECK(TightRank(model, sol.values) == model.n_vars);
    }
    if (oracle) ++feasible;
  }
  CHECK(feasible > 100);
}

TEST_CASE("exact arithmetic reports exact") {
  LpModel model(2);
  model.objective = {1.0, 2.0};
  model.AddRow({{{0, 3.0}, {1, 1.0}}, Relation::kGreaterEqual, 1.0});
  LpOptions options;
  options.arithmetic = Arithmetic::kExact;
  LpSolution sol = SolveLp(model, options);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.exact);
  CHECK(sol.values[0] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("pivot guard raises NumericalFailure in double mode") {
  Rng rng(7);
  LpModel model = RandomModel(rng);
  while (!EnumerateVertices(model)) model = RandomModel(rng);
  LpOptions options;
  options.arithmetic = Arithmetic::kDouble;
  options.max_pivots = 0;
  bool threw = false;
  try {
    LpSolution sol = SolveLp(model, options);
    // A model already optimal at the starting basis needs no pivots.
    threw = sol.pivots == 0;
  } catch (const NumericalFailure&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("solves are deterministic") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    LpModel model = RandomModel(rng);
    LpSolution a = SolveLp(model);
    LpSolution b = SolveLp(model);
    CHECK(a.status == b.status);
    CHECK(a.values == b.values);
  }
}

TEST_CASE("separation with an empty oracle equals a plain solve") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    LpModel model = RandomModel(rng);
    LpSolution plain = SolveLp(model);
    LpSolution cut = SolveWithSeparation(
        model, [](std::span<const double>) { return std::vector<Cut>{}; }, 10);
    CHECK(plain.status == cut.status);
    CHECK(plain.values == cut.values);
    CHECK(cut.rounds == 1);
    CHECK(cut.certified);
  }
}

TEST_CASE("cutting-plane objective never decreases") {
  // min sum x over 4 variables; the oracle reveals x_i + x_{i+1} >= 1 rows
  // one at a time.
  LpModel base(4);
  base.objective = {1.0, 1.0, 1.0, 1.0};
  std::vector<LpRow> family;
  for (int i = 0; i < 4; ++i) {
    family.push_back({{{i, 1.0}, {(i + 1) % 4, 1.0}}, Relation::kGreaterEqual, 1.0});
  }
  std::vector<double> seen;
  SeparationOracle oracle = [&](std::span<const double> x) {
    seen.push_back(base.Evaluate(x));
    std::vector<Cut> cuts;
    for (const LpRow& row : family) {
      if (row.Violation(x) > 0.0) {
        cuts.push_back({row, row.Violation(x)});
        break;
      }
    }
    return cuts;
  };
  LpSolution sol = SolveWithSeparation(base, oracle, 20);
  CHECK(sol.objective_value == doctest::Approx(2.0));
  CHECK(sol.certified);
  for (size_t k = 1; k < seen.size(); ++k) CHECK(seen[k] >= seen[k - 1] - 1e-12);
}

TEST_CASE("round limit reports the best solution") {
  LpModel base(2);
  base.objective = {1.0, 1.0};
  int calls = 0;
  SeparationOracle oracle = [&](std::span<const double>) {
    ++calls;
    LpRow row{{{0, 1.0}, {1, static_cast<double>(calls)}}, Relation::kGreaterEqual, 0.0};
    return std::vector<Cut>{{row, 1.0}};
  };
  try {
    SolveWithSeparation(base, oracle, 3);
    FAIL("expected RoundLimitExceeded");
  } catch (const RoundLimitExceeded& e) {
    CHECK(e.best().status == LpStatus::kOptimal);
    CHECK_FALSE(e.best().certified);
  }
}

TEST_CASE("LP text dump lists objective, rows and bounds") {
  LpModel model;
  model.AddVariable(2.0, 0.0, 1.0, "a");
  model.AddVariable(-1.0, 0.0, 2.0, "b");
  model.AddRow({{{0, 1.0}, {1, 1.0}}, Relation::kGreaterEqual, 1.0, "cover"});
  const std::string text = ToLpText(model);
  CHECK(text.find("minimize") != std::string::npos);
  CHECK(text.find("cover:") != std::string::npos);
  CHECK(text.find("cover: + 1 a + 1 b >= 1") != std::string::npos);
  CHECK(text.find("0 <= b <= 2") != std::string::npos);
  CHECK(text.find("end") != std::string::npos);
}

TEST_CASE("tolerances can be overridden from the environment") {
  setenv("MSTAGE_FEAS_TOL", "1e-6", 1);
  setenv("MSTAGE_SEP_TOL", "1e-5", 1);
  LpOptions options = LpOptions::FromEnvironment();
  CHECK(options.feasibility_tol == doctest::Approx(1e-6));
  CHECK(options.separation_tol == doctest::Approx(1e-5));
  CHECK(options.optimality_tol == doctest::Approx(1e-9));
  unsetenv("MSTAGE_FEAS_TOL");
  unsetenv("MSTAGE_SEP_TOL");
}

}  // namespace
}  // namespace mstage
