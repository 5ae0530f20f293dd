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

#ifndef MSTAGE_LP_HPP_
#define MSTAGE_LP_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mstage {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kGreaterEqual, kLessEqual, kEqual };

struct LpTerm {
  int var = 0;
  double coef = 0.0;
};

struct LpRow {
  std::vector<LpTerm> terms;
  Relation relation = Relation::kGreaterEqual;
  double rhs = 0.0;
  std::string name;  // optional, used by the text dump only

  // Left-hand side evaluated at `values`.
  double Activity(std::span<const double> values) const;
  // Amount by which `values` violates the row (0 when satisfied).
  double Violation(std::span<const double> values) const;
};

// A linear program in minimization form. Variables default to [0, 1].
struct LpModel {
  int n_vars = 0;
  std::vector<double> objective;
  double objective_offset = 0.0;
  std::vector<LpRow> rows;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> var_names;  // optional

  LpModel() = default;
  explicit LpModel(int n);

  int AddVariable(double cost, double lo = 0.0, double hi = 1.0,
                  std::string name = {});
  void AddRow(LpRow row);

  // Throws MalformedModel when an invariant is broken.
  void Validate() const;
  double Evaluate(std::span<const double> values) const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;
  double objective_value = 0.0;
  std::int64_t pivots = 0;
  bool exact = false;  // produced by the rational path

  // Cutting-plane bookkeeping; zero for plain solves.
  int rounds = 0;
  int cuts_added = 0;
  // False if separation stalled on duplicate rows before certifying.
  bool certified = true;
};

enum class Arithmetic {
  kAuto,    // double, rational re-solve on NumericalFailure
  kDouble,  // double only, NumericalFailure propagates
  kExact,   // rational only
};

struct LpOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double separation_tol = 1e-6;
  double pivot_tol = 1e-9;
  // Dantzig pricing for this many pivots, Bland's rule afterwards.
  std::int64_t dantzig_pivots = 2000;
  // Cycling guard. Exceeding it raises NumericalFailure.
  std::int64_t max_pivots = 200000;
  Arithmetic arithmetic = Arithmetic::kAuto;

  // Reads MSTAGE_FEAS_TOL, MSTAGE_OPT_TOL and MSTAGE_SEP_TOL when set.
  static LpOptions FromEnvironment();
};

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedModel : public LpError {
 public:
  using LpError::LpError;
};

class NumericalFailure : public LpError {
 public:
  using LpError::LpError;
};

class RoundLimitExceeded : public LpError {
 public:
  RoundLimitExceeded(const std::string& what, LpSolution best)
      : LpError(what), best_(std::move(best)) {}
  const LpSolution& best() const { return best_; }

 private:
  LpSolution best_;
};

// Bounded-variable primal simplex. Returns a basic optimal solution.
LpSolution SolveLp(const LpModel& model, const LpOptions& options = {});

struct Cut {
  LpRow row;
  double violation = 0.0;
};

// Given candidate values, returns rows of the implicit family violated by
// more than the separation tolerance.
using SeparationOracle = std::function<std::vector<Cut>(std::span<const double>)>;

// Cutting-plane loop. Rows already present (by sparsity pattern and
// coefficients) are never re-added.
LpSolution SolveWithSeparation(const LpModel& base,
                               const SeparationOracle& oracle, int max_rounds,
                               const LpOptions& options = {});

// Human-readable dump: objective, one row per line, bounds.
std::string ToLpText(const LpModel& model);

}  // namespace mstage

#endif  // MSTAGE_LP_HPP_
