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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "mstage/lp.hpp"

namespace mstage {

double LpRow::Activity(std::span<const double> values) const {
  double sum = 0.0;
  for (const LpTerm& t : terms) sum += t.coef * values[t.var];
  return sum;
}

double LpRow::Violation(std::span<const double> values) const {
  const double lhs = Activity(values);
  switch (relation) {
    case Relation::kGreaterEqual:
      return std::max(0.0, rhs - lhs);
    case Relation::kLessEqual:
      return std::max(0.0, lhs - rhs);
    case Relation::kEqual:
      return std::abs(lhs - rhs);
  }
  return 0.0;
}

LpModel::LpModel(int n)
    : n_vars(n), objective(n, 0.0), lower(n, 0.0), upper(n, 1.0) {}

int LpModel::AddVariable(double cost, double lo, double hi, std::string name) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  if (!name.empty() || !var_names.empty()) {
    var_names.resize(n_vars);
    var_names.push_back(std::move(name));
  }
  return n_vars++;
}

void LpModel::AddRow(LpRow row) { rows.push_back(std::move(row)); }

void LpModel::Validate() const {
  if (n_vars < 0) throw MalformedModel("negative variable count");
  if (static_cast<int>(objective.size()) != n_vars) {
    throw MalformedModel("objective length differs from n_vars");
  }
  if (static_cast<int>(lower.size()) != n_vars ||
      static_cast<int>(upper.size()) != n_vars) {
    throw MalformedModel("bound vectors differ from n_vars");
  }
  for (int j = 0; j < n_vars; ++j) {
    if (!std::isfinite(lower[j])) {
      throw MalformedModel("variable " + std::to_string(j) +
                           " needs a finite lower bound");
    }
    if (lower[j] > upper[j]) {
      throw MalformedModel("variable " + std::to_string(j) + " has lo > hi");
    }
    if (!std::isfinite(objective[j])) {
      throw MalformedModel("non-finite objective coefficient");
    }
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!std::isfinite(rows[i].rhs)) {
      throw MalformedModel("non-finite rhs in row " + std::to_string(i));
    }
    for (const LpTerm& t : rows[i].terms) {
      if (t.var < 0 || t.var >= n_vars) {
        throw MalformedModel("row " + std::to_string(i) +
                             " references undeclared variable " +
                             std::to_string(t.var));
      }
      if (!std::isfinite(t.coef)) {
        throw MalformedModel("non-finite coefficient in row " +
                             std::to_string(i));
      }
    }
  }
}

double LpModel::Evaluate(std::span<const double> values) const {
  double sum = objective_offset;
  for (int j = 0; j < n_vars; ++j) sum += objective[j] * values[j];
  return sum;
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

using RowKey =
    std::tuple<int, double, std::vector<std::pair<int, double>>>;

RowKey KeyOf(const LpRow& row) {
  std::vector<std::pair<int, double>> terms;
  terms.reserve(row.terms.size());
  for (const LpTerm& t : row.terms) {
    if (t.coef != 0.0) terms.emplace_back(t.var, t.coef);
  }
  std::sort(terms.begin(), terms.end());
  return {static_cast<int>(row.relation), row.rhs, std::move(terms)};
}

}  // namespace

LpSolution SolveWithSeparation(const LpModel& base,
                               const SeparationOracle& oracle, int max_rounds,
                               const LpOptions& options) {
  LpModel model = base;
  std::set<RowKey> seen;
  for (const LpRow& row : model.rows) seen.insert(KeyOf(row));

  int cuts_added = 0;
  LpSolution sol;
  for (int round = 1; round <= max_rounds; ++round) {
    sol = SolveLp(model, options);
    sol.rounds = round;
    sol.cuts_added = cuts_added;
    if (sol.status != LpStatus::kOptimal) return sol;

    std::vector<Cut> cuts = oracle(sol.values);
    int fresh = 0;
    for (Cut& cut : cuts) {
      if (cut.violation <= options.separation_tol) continue;
      if (!seen.insert(KeyOf(cut.row)).second) continue;
      model.AddRow(std::move(cut.row));
      ++fresh;
    }
    if (fresh == 0) {
      // Violated rows that are already present mean the oracle and the
      // simplex disagree by more than the tolerances allow.
      sol.certified = std::none_of(cuts.begin(), cuts.end(), [&](const Cut& c) {
        return c.violation > options.separation_tol;
      });
      return sol;
    }
    cuts_added += fresh;
  }
  sol.certified = false;
  throw RoundLimitExceeded(
      "cutting-plane round limit " + std::to_string(max_rounds) + " reached",
      sol);
}

std::string ToLpText(const LpModel& model) {
  auto name = [&](int j) {
    if (j < static_cast<int>(model.var_names.size()) &&
        !model.var_names[j].empty()) {
      return model.var_names[j];
    }
    return "x" + std::to_string(j);
  };
  std::ostringstream out;
  out.precision(17);
  out << "minimize\n  obj:";
  for (int j = 0; j < model.n_vars; ++j) {
    if (model.objective[j] != 0.0) {
      out << (model.objective[j] < 0 ? " - " : " + ")
          << std::abs(model.objective[j]) << ' ' << name(j);
    }
  }
  if (model.objective_offset != 0.0) {
    out << (model.objective_offset < 0 ? " - " : " + ")
        << std::abs(model.objective_offset);
  }
  out << "\nsubject to\n";
  for (size_t i = 0; i < model.rows.size(); ++i) {
    const LpRow& row = model.rows[i];
    out << "  " << (row.name.empty() ? "r" + std::to_string(i) : row.name)
        << ':';
    for (const LpTerm& t : row.terms) {
      out << (t.coef < 0 ? " - " : " + ") << std::abs(t.coef) << ' '
          << name(t.var);
    }
    switch (row.relation) {
      case Relation::kGreaterEqual:
        out << " >= ";
        break;
      case Relation::kLessEqual:
        out << " <= ";
        break;
      case Relation::kEqual:
        out << " = ";
        break;
    }
    out << row.rhs << '\n';
  }
  out << "bounds\n";
  for (int j = 0; j < model.n_vars; ++j) {
    out << "  " << model.lower[j] << " <= " << name(j) << " <= ";
    if (std::isinf(model.upper[j])) {
      out << "inf";
    } else {
      out << model.upper[j];
    }
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

}  // namespace mstage
