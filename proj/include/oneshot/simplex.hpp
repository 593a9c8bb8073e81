// Copyright 2026 The Authors.
//
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

// Dense two-phase primal simplex for small maximization problems.
//
// Variables carry finite lower bounds and optional upper bounds. Lower bounds
// are shifted to zero and finite upper bounds become explicit rows. Entering
// columns follow Dantzig's rule (lowest index on ties) until the objective
// stalls for 5*(m+n) consecutive pivots, after which Bland's rule is used for
// the rest of the phase.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oneshot/error.hpp"

namespace oneshot {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  std::vector<double> coeffs;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

/// maximize objective . x  subject to constraints and lower <= x <= upper.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<double> lower;
  std::vector<double> upper;

  LinearProgram() = default;
  explicit LinearProgram(std::size_t num_vars)
      : objective(num_vars, 0.0), lower(num_vars, 0.0), upper(num_vars, kInfinity) {}

  std::size_t num_vars() const noexcept { return objective.size(); }

  void add(std::vector<double> coeffs, Relation relation, double rhs) {
    constraints.push_back({std::move(coeffs), relation, rhs});
  }

  void validate() const {
    const std::size_t n = num_vars();
    if (lower.size() != n || upper.size() != n)
      throw Error(Errc::InvalidArgument, "bound vectors must match the number of variables");
    for (std::size_t i = 0; i < constraints.size(); ++i)
      if (constraints[i].coeffs.size() != n)
        throw Error(Errc::InvalidArgument, "constraint " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(lower[j]) || lower[j] > upper[j])
        throw Error(Errc::InvalidArgument, "bad bounds on variable " + std::to_string(j));
  }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

inline std::string_view to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "Optimal";
    case LPStatus::Infeasible: return "Infeasible";
    case LPStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  double value = 0.0;
  std::vector<double> primal;
  std::size_t iterations = 0;
};

/// Raised by check_feasible; names the first violated row or bound.
class InfeasiblePointError : public Error {
 public:
  InfeasiblePointError(std::size_t index, bool is_bound, const std::string& what)
      : Error(Errc::InfeasiblePoint, what), index_(index), is_bound_(is_bound) {}

  /// Constraint index, or variable index when is_bound() is true.
  std::size_t index() const noexcept { return index_; }
  bool is_bound() const noexcept { return is_bound_; }

 private:
  std::size_t index_;
  bool is_bound_;
};

/// Objective value at `point` if every constraint and bound holds within
/// `tol`; throws InfeasiblePointError otherwise.
inline double check_feasible(const LinearProgram& lp, std::span<const double> point,
                             double tol = 1e-9) {
  lp.validate();
  const std::size_t n = lp.num_vars();
  if (point.size() != n) throw Error(Errc::InvalidArgument, "point has wrong dimension");
  for (std::size_t j = 0; j < n; ++j) {
    if (point[j] < lp.lower[j] - tol || point[j] > lp.upper[j] + tol)
      throw InfeasiblePointError(j, true, "variable " + std::to_string(j) + " = " +
                                              std::to_string(point[j]) + " violates its bounds");
  }
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += c.coeffs[j] * point[j];
    const bool ok = c.relation == Relation::LessEqual  ? lhs <= c.rhs + tol
                    : c.relation == Relation::GreaterEqual ? lhs >= c.rhs - tol
                                                           : std::abs(lhs - c.rhs) <= tol;
    if (!ok)
      throw InfeasiblePointError(i, false, "constraint " + std::to_string(i) + " violated: lhs " +
                                               std::to_string(lhs) + ", rhs " + std::to_string(c.rhs));
  }
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * point[j];
  return value;
}

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double residual_tol = 1e-7;
  /// 0 selects a size-dependent limit.
  std::size_t max_iterations = 0;
};

namespace detail {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& opt) : opt_(opt), n_(lp.num_vars()) {
    struct Row {
      std::vector<double> a;
      Relation rel;
      double b;
    };
    std::vector<Row> rows;
    for (const auto& c : lp.constraints) {
      double b = c.rhs;
      for (std::size_t j = 0; j < n_; ++j) b -= c.coeffs[j] * lp.lower[j];
      rows.push_back({c.coeffs, c.relation, b});
    }
    for (std::size_t j = 0; j < n_; ++j) {
      if (!std::isfinite(lp.upper[j])) continue;
      std::vector<double> a(n_, 0.0);
      a[j] = 1.0;
      rows.push_back({std::move(a), Relation::LessEqual, lp.upper[j] - lp.lower[j]});
    }
    for (auto& r : rows) {
      if (r.b < 0.0) {
        for (double& v : r.a) v = -v;
        r.b = -r.b;
        if (r.rel == Relation::LessEqual)
          r.rel = Relation::GreaterEqual;
        else if (r.rel == Relation::GreaterEqual)
          r.rel = Relation::LessEqual;
      }
    }

    std::size_t slacks = 0, artificials = 0;
    for (const auto& r : rows) {
      if (r.rel != Relation::Equal) ++slacks;
      if (r.rel != Relation::LessEqual) ++artificials;
    }
    first_artificial_ = n_ + slacks;
    cols_ = first_artificial_ + artificials;

    const std::size_t m = rows.size();
    t_.assign(m, std::vector<double>(cols_, 0.0));
    rhs_.resize(m);
    basis_.resize(m);
    std::size_t next_slack = n_, next_art = first_artificial_;
    for (std::size_t i = 0; i < m; ++i) {
      std::copy(rows[i].a.begin(), rows[i].a.end(), t_[i].begin());
      rhs_[i] = rows[i].b;
      switch (rows[i].rel) {
        case Relation::LessEqual:
          t_[i][next_slack] = 1.0;
          basis_[i] = next_slack++;
          break;
        case Relation::GreaterEqual:
          t_[i][next_slack++] = -1.0;
          t_[i][next_art] = 1.0;
          basis_[i] = next_art++;
          break;
        case Relation::Equal:
          t_[i][next_art] = 1.0;
          basis_[i] = next_art++;
          break;
      }
    }
    in_basis_.assign(cols_, 0);
    for (std::size_t b : basis_) in_basis_[b] = 1;
    max_iterations_ = opt.max_iterations ? opt.max_iterations : 200 * (m + cols_) + 10000;
  }

  LPStatus run(const LinearProgram& lp) {
    if (first_artificial_ < cols_) {
      std::vector<double> phase1(cols_, 0.0);
      for (std::size_t j = first_artificial_; j < cols_; ++j) phase1[j] = -1.0;
      allowed_.assign(cols_, true);
      if (iterate(phase1) != LPStatus::Optimal)
        throw Error(Errc::NumericalFailure, "phase one reported an unbounded ray");
      double infeas = 0.0, scale = 1.0;
      for (std::size_t i = 0; i < rhs_.size(); ++i) {
        scale = std::max(scale, std::abs(rhs_[i]));
        if (basis_[i] >= first_artificial_) infeas += rhs_[i];
      }
      if (infeas > 1e-9 * scale) return LPStatus::Infeasible;
      drive_out_artificials();
    }
    std::vector<double> phase2(cols_, 0.0);
    std::copy(lp.objective.begin(), lp.objective.end(), phase2.begin());
    allowed_.assign(cols_, true);
    for (std::size_t j = first_artificial_; j < cols_; ++j) allowed_[j] = false;
    return iterate(phase2);
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    return x;
  }

  std::size_t iterations() const noexcept { return iterations_; }

 private:
  LPStatus iterate(const std::vector<double>& cost) {
    // Reduced costs d_j = c_j - c_B B^{-1} A_j for the current basis.
    std::vector<double> d = cost;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) d[j] -= cb * t_[i][j];
    }
    const std::size_t stall_limit = 5 * (t_.size() + cols_);
    std::size_t stalled = 0;
    bool bland = false;

    for (;;) {
      std::size_t enter = cols_;
      double best = opt_.pivot_tol;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allowed_[j] || is_basic(j) || d[j] <= opt_.pivot_tol) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (d[j] > best) {
          best = d[j];
          enter = j;
        }
      }
      if (enter == cols_) return LPStatus::Optimal;

      std::size_t leave = t_.size();
      double best_ratio = kInfinity;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        const double a = t_[i][enter];
        if (a <= opt_.pivot_tol) continue;
        const double ratio = rhs_[i] / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && leave < t_.size() && basis_[i] < basis_[leave])) {
          best_ratio = std::min(ratio, best_ratio);
          leave = i;
        }
      }
      if (leave == t_.size()) return LPStatus::Unbounded;

      const double gain = d[enter] * std::max(0.0, best_ratio);
      pivot(leave, enter, d);
      if (++iterations_ > max_iterations_)
        throw Error(Errc::NumericalFailure, "simplex iteration limit exceeded");
      if (gain > opt_.pivot_tol) {
        stalled = 0;
      } else if (!bland && ++stalled >= stall_limit) {
        bland = true;
      }
    }
  }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& d) {
    const double inv = 1.0 / t_[r][c];
    auto& prow = t_[r];
    for (double& v : prow) v *= inv;
    rhs_[r] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r) continue;
      const double f = t_[i][c];
      if (f == 0.0) continue;
      auto& row = t_[i];
      for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
      rhs_[i] -= f * rhs_[r];
      if (rhs_[i] < 0.0 && rhs_[i] > -opt_.pivot_tol) rhs_[i] = 0.0;
    }
    const double f = d[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) d[j] -= f * prow[j];
      d[c] = 0.0;
    }
    in_basis_[basis_[r]] = 0;
    in_basis_[c] = 1;
    basis_[r] = c;
  }

  void drive_out_artificials() {
    std::vector<double> scratch(cols_, 0.0);
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      std::size_t col = cols_;
      double best = opt_.pivot_tol;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (is_basic(j)) continue;
        if (std::abs(t_[i][j]) > best) {
          best = std::abs(t_[i][j]);
          col = j;
        }
      }
      if (col == cols_) {
        // Redundant row: no structural or slack column can replace the artificial.
        in_basis_[basis_[i]] = 0;
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      rhs_[i] = 0.0;
      pivot(i, col, scratch);
      ++i;
    }
  }

  bool is_basic(std::size_t j) const { return in_basis_[j] != 0; }

  SimplexOptions opt_;
  std::size_t n_;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::vector<double>> t_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<char> in_basis_;
  std::vector<bool> allowed_;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
};

}  // namespace detail

inline LPResult solve(const LinearProgram& lp, const SimplexOptions& opt = {}) {
  lp.validate();
  detail::Tableau tableau(lp, opt);
  LPResult result;
  result.status = tableau.run(lp);
  result.iterations = tableau.iterations();
  if (result.status != LPStatus::Optimal) return result;

  std::vector<double> x = tableau.primal();
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = std::clamp(lp.lower[j] + x[j], lp.lower[j], lp.upper[j]);
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coeffs[j] * x[j];
    const double excess = c.relation == Relation::LessEqual      ? lhs - c.rhs
                          : c.relation == Relation::GreaterEqual ? c.rhs - lhs
                                                                 : std::abs(lhs - c.rhs);
    if (excess > opt.residual_tol)
      throw Error(Errc::NumericalFailure, "optimum violates constraint " + std::to_string(i) +
                                              " by " + std::to_string(excess));
  }
  double value = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) value += lp.objective[j] * x[j];
  result.value = value;
  result.primal = std::move(x);
  return result;
}

}  // namespace oneshot
