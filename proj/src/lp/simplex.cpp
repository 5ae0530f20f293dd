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

// Dense-tableau bounded-variable primal simplex, templated on the scalar so
// the same pivoting code runs in double and in exact rational arithmetic.
//
// Column layout: [structural | slack | artificial]. Row i is
//   sum_j a_ij x_j + slack_sign_i * s_i + sigma_i * art_i = b_i
// with sigma_i chosen so the all-artificial starting basis is feasible.
// The artificial block of the tableau is B^-1 * diag(sigma), which lets us
// recompute basic values from scratch at the end of each phase.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "mstage/lp.hpp"

namespace mstage {

using Rational = boost::multiprecision::mpq_rational;

namespace {

template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double FromDouble(double v) { return v; }
  static double ToDouble(double v) { return v; }
  static double Abs(double v) { return std::abs(v); }
  static constexpr bool kExact = false;
};

template <>
struct ScalarTraits<Rational> {
  static Rational FromDouble(double v) { return Rational(v); }
  static double ToDouble(const Rational& v) { return v.convert_to<double>(); }
  static Rational Abs(const Rational& v) { return abs(v); }
  static constexpr bool kExact = true;
};

enum class Outcome { kOptimal, kUnbounded };

template <typename Scalar>
class Simplex {
  using Traits = ScalarTraits<Scalar>;

 public:
  Simplex(const LpModel& model, const LpOptions& options)
      : options_(options),
        m_(static_cast<int>(model.rows.size())),
        n_(model.n_vars),
        cols_(model.n_vars + 2 * m_),
        tab_(static_cast<size_t>(m_) * cols_),
        xb_(m_),
        basis_(m_),
        row_of_(cols_, -1),
        at_upper_(cols_, 0),
        lo_(cols_),
        hi_(cols_),
        has_hi_(cols_, 1),
        cost_(cols_),
        reduced_(cols_),
        sigma_(m_, 1),
        b_(m_) {
    if constexpr (Traits::kExact) {
      opt_tol_ = 0;
      piv_tol_ = 0;
    } else {
      opt_tol_ = options.optimality_tol;
      piv_tol_ = options.pivot_tol;
    }
    for (int j = 0; j < n_; ++j) {
      lo_[j] = Traits::FromDouble(model.lower[j]);
      if (std::isinf(model.upper[j])) {
        has_hi_[j] = 0;
      } else {
        hi_[j] = Traits::FromDouble(model.upper[j]);
      }
    }
    for (int i = 0; i < m_; ++i) {
      const LpRow& row = model.rows[i];
      const int slack = n_ + i;
      const int art = n_ + m_ + i;
      lo_[slack] = 0;
      if (row.relation == Relation::kEqual) {
        hi_[slack] = 0;
      } else {
        has_hi_[slack] = 0;
      }
      lo_[art] = 0;
      has_hi_[art] = 0;

      Scalar residual = Traits::FromDouble(row.rhs);
      b_[i] = residual;
      for (const LpTerm& t : row.terms) {
        Scalar a = Traits::FromDouble(t.coef);
        At(i, t.var) += a;
        residual -= a * lo_[t.var];
      }
      At(i, slack) = row.relation == Relation::kGreaterEqual ? -1 : 1;
      sigma_[i] = residual >= 0 ? 1 : -1;
      if (sigma_[i] < 0) {
        for (int j = 0; j < n_ + m_; ++j) At(i, j) = -At(i, j);
        residual = -residual;
      }
      At(i, art) = 1;
      xb_[i] = residual;
      basis_[i] = art;
      row_of_[art] = i;
    }
    CaptureColumns(model);
  }

  // Returns false when phase 1 cannot reach zero infeasibility.
  bool PhaseOne() {
    for (int j = 0; j < cols_; ++j) cost_[j] = j >= n_ + m_ ? 1 : 0;
    RecomputeReducedCosts();
    Run();
    RefreshBasicValues();
    Scalar infeasibility = 0;
    Scalar scale = 1;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= n_ + m_) infeasibility += xb_[i];
      scale = std::max<Scalar>(scale, Traits::Abs(b_[i]));
    }
    if constexpr (Traits::kExact) {
      if (infeasibility > 0) return false;
    } else {
      if (infeasibility > options_.feasibility_tol * scale) return false;
    }
    DriveOutArtificials();
    for (int j = n_ + m_; j < cols_; ++j) {
      hi_[j] = 0;
      has_hi_[j] = 1;
      at_upper_[j] = 0;
    }
    return true;
  }

  Outcome PhaseTwo(const LpModel& model) {
    for (int j = 0; j < cols_; ++j) {
      cost_[j] = j < n_ ? Traits::FromDouble(model.objective[j]) : Scalar(0);
    }
    RecomputeReducedCosts();
    Outcome outcome = Run();
    RefreshBasicValues();
    return outcome;
  }

  std::vector<double> StructuralValues() const {
    std::vector<double> values(n_);
    for (int j = 0; j < n_; ++j) values[j] = Traits::ToDouble(Value(j));
    return values;
  }

  std::int64_t pivots() const { return pivots_; }

 private:
  Scalar& At(int i, int j) { return tab_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& At(int i, int j) const {
    return tab_[static_cast<size_t>(i) * cols_ + j];
  }

  Scalar Value(int j) const {
    if (row_of_[j] >= 0) return xb_[row_of_[j]];
    return at_upper_[j] ? hi_[j] : lo_[j];
  }

  bool Fixed(int j) const { return has_hi_[j] && hi_[j] == lo_[j]; }

  void RecomputeReducedCosts() {
    for (int j = 0; j < cols_; ++j) {
      if (row_of_[j] >= 0) {
        reduced_[j] = 0;
        continue;
      }
      Scalar d = cost_[j];
      for (int i = 0; i < m_; ++i) {
        const Scalar& a = At(i, j);
        if (a != 0) d -= cost_[basis_[i]] * a;
      }
      reduced_[j] = d;
    }
  }

  // x_B = B^-1 (b - N x_N), with B^-1 read off the artificial block.
  void RefreshBasicValues() {
    std::vector<Scalar> rhs(m_);
    for (int k = 0; k < m_; ++k) rhs[k] = b_[k];
    // Nonbasic contributions use the original, unscaled coefficients.
    for (int j = 0; j < n_ + m_; ++j) {
      if (row_of_[j] >= 0) continue;
      Scalar v = at_upper_[j] ? hi_[j] : lo_[j];
      if (v == 0) continue;
      for (const auto& [k, a] : original_columns_[j]) rhs[k] -= a * v;
    }
    for (int i = 0; i < m_; ++i) {
      Scalar x = 0;
      for (int k = 0; k < m_; ++k) {
        const Scalar& binv = At(i, n_ + m_ + k);
        if (binv != 0) x += binv * rhs[k] * sigma_[k];
      }
      xb_[i] = x;
    }
  }

  int ChooseEntering(bool bland) const {
    int best = -1;
    Scalar best_score = 0;
    for (int j = 0; j < cols_; ++j) {
      if (row_of_[j] >= 0 || Fixed(j)) continue;
      const Scalar& d = reduced_[j];
      bool improving = at_upper_[j] ? d > opt_tol_ : d < -opt_tol_;
      if (!improving) continue;
      if (bland) return j;
      Scalar score = Traits::Abs(d);
      if (best < 0 || score > best_score) {
        best = j;
        best_score = score;
      }
    }
    return best;
  }

  Outcome Run() {
    for (;;) {
      const bool bland = pivots_ >= options_.dantzig_pivots;
      const int enter = ChooseEntering(bland);
      if (enter < 0) return Outcome::kOptimal;
      if (pivots_ >= options_.max_pivots) {
        throw NumericalFailure("simplex pivot limit exceeded");
      }
      ++pivots_;

      const int dir = at_upper_[enter] ? -1 : 1;
      int leave_row = -1;
      bool leave_to_upper = false;
      Scalar theta = 0;
      Scalar leave_mag = 0;
      bool have_theta = false;
      for (int i = 0; i < m_; ++i) {
        Scalar a = At(i, enter);
        if (dir < 0) a = -a;
        const int bvar = basis_[i];
        Scalar limit;
        bool to_upper;
        if (a > piv_tol_) {
          limit = (xb_[i] - lo_[bvar]) / a;
          to_upper = false;
        } else if (a < -piv_tol_ && has_hi_[bvar]) {
          limit = (hi_[bvar] - xb_[i]) / (-a);
          to_upper = true;
        } else {
          continue;
        }
        if (limit < 0) limit = 0;
        Scalar mag = Traits::Abs(a);
        bool take = false;
        if (!have_theta || limit < theta - RatioTieTol()) {
          take = true;
        } else if (limit <= theta + RatioTieTol()) {
          take = bland ? bvar < basis_[leave_row] : mag > leave_mag;
        }
        if (take) {
          theta = have_theta && limit > theta ? theta : limit;
          leave_row = i;
          leave_to_upper = to_upper;
          leave_mag = mag;
          have_theta = true;
        }
      }

      bool flip = false;
      if (has_hi_[enter]) {
        Scalar range = hi_[enter] - lo_[enter];
        if (!have_theta || range <= theta) {
          theta = range;
          flip = true;
        }
      }
      if (!flip && !have_theta) return Outcome::kUnbounded;

      const Scalar step = dir > 0 ? theta : Scalar(-theta);
      const Scalar entering_value =
          (at_upper_[enter] ? hi_[enter] : lo_[enter]) + step;
      if (theta != 0) {
        for (int i = 0; i < m_; ++i) {
          const Scalar& a = At(i, enter);
          if (a != 0) xb_[i] -= step * a;
        }
      }
      if (flip) {
        at_upper_[enter] = at_upper_[enter] ? 0 : 1;
        continue;
      }
      const int leave = basis_[leave_row];
      row_of_[leave] = -1;
      at_upper_[leave] = leave_to_upper ? 1 : 0;
      Pivot(leave_row, enter);
      xb_[leave_row] = entering_value;
    }
  }

  Scalar RatioTieTol() const {
    if constexpr (Traits::kExact) {
      return Scalar(0);
    } else {
      return 1e-12;
    }
  }

  void Pivot(int r, int enter) {
    const Scalar piv = At(r, enter);
    for (int j = 0; j < cols_; ++j) {
      if (At(r, j) != 0) At(r, j) /= piv;
    }
    At(r, enter) = 1;
    std::vector<int> nz;
    nz.reserve(cols_);
    for (int j = 0; j < cols_; ++j) {
      if (At(r, j) != 0) nz.push_back(j);
    }
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const Scalar f = At(i, enter);
      if (f == 0) continue;
      for (int j : nz) At(i, j) -= f * At(r, j);
      At(i, enter) = 0;
    }
    const Scalar fd = reduced_[enter];
    if (fd != 0) {
      for (int j : nz) reduced_[j] -= fd * At(r, j);
    }
    reduced_[enter] = 0;
    basis_[r] = enter;
    row_of_[enter] = r;
  }

  void CaptureColumns(const LpModel& model) {
    original_columns_.assign(n_ + m_, {});
    for (int i = 0; i < m_; ++i) {
      for (const LpTerm& t : model.rows[i].terms) {
        auto& col = original_columns_[t.var];
        Scalar a = Traits::FromDouble(t.coef);
        if (!col.empty() && col.back().first == i) {
          col.back().second += a;
        } else {
          col.emplace_back(i, a);
        }
      }
      original_columns_[n_ + i].emplace_back(
          i, model.rows[i].relation == Relation::kGreaterEqual ? -1 : 1);
    }
  }

  void DriveOutArtificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + m_) continue;
      int best = -1;
      Scalar best_mag = 0;
      for (int j = 0; j < n_ + m_; ++j) {
        if (row_of_[j] >= 0) continue;
        Scalar mag = Traits::Abs(At(i, j));
        if (mag > piv_tol_ && mag > best_mag) {
          best = j;
          best_mag = mag;
        }
      }
      if (best < 0) continue;  // redundant row, artificial stays at zero
      const int art = basis_[i];
      const Scalar value = at_upper_[best] ? hi_[best] : lo_[best];
      row_of_[art] = -1;
      at_upper_[art] = 0;
      Pivot(i, best);
      xb_[i] = value;
    }
  }

 private:
  LpOptions options_;
  int m_;
  int n_;
  int cols_;
  std::vector<Scalar> tab_;
  std::vector<Scalar> xb_;
  std::vector<int> basis_;
  std::vector<int> row_of_;
  std::vector<std::uint8_t> at_upper_;
  std::vector<Scalar> lo_;
  std::vector<Scalar> hi_;
  std::vector<std::uint8_t> has_hi_;
  std::vector<Scalar> cost_;
  std::vector<Scalar> reduced_;
  std::vector<int> sigma_;
  std::vector<Scalar> b_;
  std::vector<std::vector<std::pair<int, Scalar>>> original_columns_;
  Scalar opt_tol_;
  Scalar piv_tol_;
  std::int64_t pivots_ = 0;
};

template <typename Scalar>
LpSolution SolveWith(const LpModel& model, const LpOptions& options) {
  Simplex<Scalar> simplex(model, options);
  LpSolution sol;
  sol.exact = ScalarTraits<Scalar>::kExact;
  if (!simplex.PhaseOne()) {
    sol.status = LpStatus::kInfeasible;
    sol.pivots = simplex.pivots();
    return sol;
  }
  Outcome outcome = simplex.PhaseTwo(model);
  sol.pivots = simplex.pivots();
  if (outcome == Outcome::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }
  sol.status = LpStatus::kOptimal;
  sol.values = simplex.StructuralValues();
  return sol;
}

// Snaps bound jitter below 1e-9 and rejects anything worse.
void Polish(const LpModel& model, const LpOptions& options, LpSolution& sol) {
  for (int j = 0; j < model.n_vars; ++j) {
    double& v = sol.values[j];
    if (v < model.lower[j]) {
      if (model.lower[j] - v > 1e-9) {
        throw NumericalFailure("bound violated on variable " +
                               std::to_string(j));
      }
      v = model.lower[j];
    } else if (v > model.upper[j]) {
      if (v - model.upper[j] > 1e-9) {
        throw NumericalFailure("bound violated on variable " +
                               std::to_string(j));
      }
      v = model.upper[j];
    }
  }
  for (size_t i = 0; i < model.rows.size(); ++i) {
    if (model.rows[i].Violation(sol.values) > options.feasibility_tol) {
      throw NumericalFailure("row " + std::to_string(i) +
                             " violated after solve");
    }
  }
  sol.objective_value = model.Evaluate(sol.values);
}

}  // namespace

LpSolution SolveLp(const LpModel& model, const LpOptions& options) {
  model.Validate();
  auto finish = [&](LpSolution sol) {
    if (sol.status == LpStatus::kOptimal) Polish(model, options, sol);
    return sol;
  };
  switch (options.arithmetic) {
    case Arithmetic::kExact:
      return finish(SolveWith<Rational>(model, options));
    case Arithmetic::kDouble:
      return finish(SolveWith<double>(model, options));
    case Arithmetic::kAuto:
      break;
  }
  try {
    return finish(SolveWith<double>(model, options));
  } catch (const NumericalFailure&) {
    return finish(SolveWith<Rational>(model, options));
  }
}

LpOptions LpOptions::FromEnvironment() {
  LpOptions options;
  auto read = [](const char* name, double& target) {
    if (const char* text = std::getenv(name)) {
      char* end = nullptr;
      double v = std::strtod(text, &end);
      if (end != text && v > 0) target = v;
    }
  };
  read("MSTAGE_FEAS_TOL", options.feasibility_tol);
  read("MSTAGE_OPT_TOL", options.optimality_tol);
  read("MSTAGE_SEP_TOL", options.separation_tol);
  return options;
}

}  // namespace mstage
