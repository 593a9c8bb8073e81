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

// The non-signaling relaxation of one-shot coding:
//
//   S_NS(W,k) = max (1/k) sum_{x,y} W(y|x) r[x][y]
//               s.t. sum_x r[x][y] <= 1        for every y
//                    sum_x p[x] = k
//                    0 <= r[x][y] <= p[x] <= 1
//
// together with its fractional coverage function f_W(p) and the conversions
// between LP solutions and non-signaling boxes P(x,j|i,y).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "oneshot/channel.hpp"
#include "oneshot/coding.hpp"
#include "oneshot/error.hpp"
#include "oneshot/matrix.hpp"
#include "oneshot/simplex.hpp"

namespace oneshot {

struct LPSolution {
  std::size_t k = 0;
  double value = 0.0;
  std::vector<double> p;
  Matrix r;  // |X| x |Y|
};

/// Objective (1/k) sum W(y|x) r[x][y] of an arbitrary (r, k).
inline double ns_objective(const Channel& w, const Matrix& r, std::size_t k) {
  double total = 0.0;
  for (std::size_t x = 0; x < w.x_size(); ++x)
    for (std::size_t y = 0; y < w.y_size(); ++y) total += w(x, y) * r(x, y);
  return total / static_cast<double>(k);
}

/// Throws InvalidSolution unless `sol` satisfies the LP constraints
/// (1e-9 on bounds and per-output sums, 1e-7 on sum p = k).
inline void validate_solution(const LPSolution& sol) {
  const std::size_t xs = sol.p.size();
  if (sol.k == 0 || xs == 0 || sol.r.rows() != xs || sol.r.cols() == 0)
    throw Error(Errc::InvalidSolution, "malformed LP solution");
  constexpr double tol = 1e-9;
  double psum = 0.0;
  for (std::size_t x = 0; x < xs; ++x) {
    if (sol.p[x] < -tol || sol.p[x] > 1.0 + tol)
      throw Error(Errc::InvalidSolution, "p[" + std::to_string(x) + "] outside [0,1]");
    psum += sol.p[x];
    for (std::size_t y = 0; y < sol.r.cols(); ++y)
      if (sol.r(x, y) < -tol || sol.r(x, y) > sol.p[x] + tol)
        throw Error(Errc::InvalidSolution, "r[" + std::to_string(x) + "][" + std::to_string(y) +
                                               "] outside [0, p[x]]");
  }
  if (std::abs(psum - static_cast<double>(sol.k)) > 1e-7)
    throw Error(Errc::InvalidSolution, "sum of p is " + std::to_string(psum) + ", expected k");
  for (std::size_t y = 0; y < sol.r.cols(); ++y) {
    double col = 0.0;
    for (std::size_t x = 0; x < xs; ++x) col += sol.r(x, y);
    if (col > 1.0 + tol)
      throw Error(Errc::InvalidSolution, "output " + std::to_string(y) + " has sum_x r = " +
                                             std::to_string(col));
  }
}

inline void require_k_within_inputs(const Channel& w, std::size_t k) {
  if (k == 0) throw Error(Errc::OutOfRange, "k must be >= 1");
  if (k > w.x_size())
    throw Error(Errc::KExceedsInputAlphabet, "k = " + std::to_string(k) + " exceeds |X| = " +
                                                 std::to_string(w.x_size()));
}

/// The relaxation as a LinearProgram. Variables are r[x][y] row-major, then
/// p[x]. r carries no explicit upper bound since r <= p <= 1 implies it.
inline LinearProgram build_ns_program(const Channel& w, std::size_t k) {
  require_k_within_inputs(w, k);
  const std::size_t xs = w.x_size(), ys = w.y_size();
  const std::size_t nr = xs * ys, n = nr + xs;
  LinearProgram lp(n);
  const double inv_k = 1.0 / static_cast<double>(k);
  for (std::size_t x = 0; x < xs; ++x)
    for (std::size_t y = 0; y < ys; ++y) lp.objective[x * ys + y] = inv_k * w(x, y);
  for (std::size_t x = 0; x < xs; ++x) lp.upper[nr + x] = 1.0;

  for (std::size_t y = 0; y < ys; ++y) {
    std::vector<double> row(n, 0.0);
    for (std::size_t x = 0; x < xs; ++x) row[x * ys + y] = 1.0;
    lp.add(std::move(row), Relation::LessEqual, 1.0);
  }
  {
    std::vector<double> row(n, 0.0);
    for (std::size_t x = 0; x < xs; ++x) row[nr + x] = 1.0;
    lp.add(std::move(row), Relation::Equal, static_cast<double>(k));
  }
  for (std::size_t x = 0; x < xs; ++x)
    for (std::size_t y = 0; y < ys; ++y) {
      std::vector<double> row(n, 0.0);
      row[x * ys + y] = 1.0;
      row[nr + x] = -1.0;
      lp.add(std::move(row), Relation::LessEqual, 0.0);
    }
  return lp;
}

/// Flattens a solution into build_ns_program's variable order.
inline std::vector<double> pack(const LPSolution& sol) {
  std::vector<double> out(sol.r.data().begin(), sol.r.data().end());
  out.insert(out.end(), sol.p.begin(), sol.p.end());
  return out;
}

inline LPSolution unpack(const Channel& w, std::size_t k, std::span<const double> vars) {
  const std::size_t xs = w.x_size(), ys = w.y_size();
  LPSolution sol;
  sol.k = k;
  sol.r = Matrix(xs, ys);
  for (std::size_t x = 0; x < xs; ++x)
    for (std::size_t y = 0; y < ys; ++y) sol.r(x, y) = vars[x * ys + y];
  sol.p.assign(vars.begin() + static_cast<std::ptrdiff_t>(xs * ys), vars.end());
  sol.value = ns_objective(w, sol.r, k);
  return sol;
}

/// S_NS(W,k) with an optimal (r, p). Requires 1 <= k <= |X|.
inline LPSolution ns_value(const Channel& w, std::size_t k) {
  const LinearProgram lp = build_ns_program(w, k);
  const LPResult res = solve(lp);
  if (res.status != LPStatus::Optimal)
    throw Error(Errc::NumericalFailure,
                "non-signaling LP returned " + std::string(to_string(res.status)));
  return unpack(w, k, res.primal);
}

/// f_W(p) = max sum W(y|x) r[x][y] over 0 <= r[x][y] <= p[x], sum_x r[x][y] <= 1.
/// The program separates over outputs and each piece is a fractional
/// knapsack, filled in decreasing W(y|x) (ties to the smaller input).
inline double f_fractional(const Channel& w, std::span<const double> p) {
  if (p.size() != w.x_size()) throw Error(Errc::InvalidArgument, "p has wrong dimension");
  for (double v : p)
    if (!(v >= 0.0 && v <= 1.0)) throw Error(Errc::OutOfRange, "p entries must lie in [0,1]");
  std::vector<std::size_t> order(w.x_size());
  double total = 0.0;
  for (std::size_t y = 0; y < w.y_size(); ++y) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return w(a, y) > w(b, y); });
    double room = 1.0;
    for (std::size_t x : order) {
      if (room <= 0.0) break;
      const double take = std::min(p[x], room);
      total += w(x, y) * take;
      room -= take;
    }
  }
  return total;
}

/// Non-signaling box P(x, j | i, y): Alice inputs message i and outputs the
/// channel input x; Bob inputs the channel output y and outputs a guess j.
class NSBox {
 public:
  NSBox(std::size_t x_size, std::size_t y_size, std::size_t k)
      : x_size_(x_size), y_size_(y_size), k_(k), probs_(x_size * k * k * y_size, 0.0),
        marginal_a_(k, x_size), marginal_b_(y_size, k) {}

  std::size_t x_size() const noexcept { return x_size_; }
  std::size_t y_size() const noexcept { return y_size_; }
  std::size_t k() const noexcept { return k_; }

  double& operator()(std::size_t x, std::size_t j, std::size_t i, std::size_t y) {
    return probs_[((x * k_ + j) * k_ + i) * y_size_ + y];
  }
  double operator()(std::size_t x, std::size_t j, std::size_t i, std::size_t y) const {
    return probs_[((x * k_ + j) * k_ + i) * y_size_ + y];
  }

  /// P_A(x|i), stored as k x |X|.
  const Matrix& marginal_a() const noexcept { return marginal_a_; }
  /// P_B(j|y), stored as |Y| x k.
  const Matrix& marginal_b() const noexcept { return marginal_b_; }

  /// Recomputes both marginals from the table, reading them at y = 0 and
  /// i = 0 respectively; ns_violation() measures how far other inputs deviate.
  void refresh_marginals() {
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t x = 0; x < x_size_; ++x) {
        double s = 0.0;
        for (std::size_t j = 0; j < k_; ++j) s += (*this)(x, j, i, 0);
        marginal_a_(i, x) = s;
      }
    for (std::size_t y = 0; y < y_size_; ++y)
      for (std::size_t j = 0; j < k_; ++j) {
        double s = 0.0;
        for (std::size_t x = 0; x < x_size_; ++x) s += (*this)(x, j, 0, y);
        marginal_b_(y, j) = s;
      }
  }

  /// Largest violation among nonnegativity, normalization and both
  /// no-signaling conditions.
  double ns_violation() const {
    double worst = 0.0;
    for (double v : probs_) worst = std::max(worst, -v);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t y = 0; y < y_size_; ++y) {
        double total = 0.0;
        for (std::size_t x = 0; x < x_size_; ++x) {
          double a = 0.0;
          for (std::size_t j = 0; j < k_; ++j) a += (*this)(x, j, i, y);
          worst = std::max(worst, std::abs(a - marginal_a_(i, x)));
          total += a;
        }
        worst = std::max(worst, std::abs(total - 1.0));
        for (std::size_t j = 0; j < k_; ++j) {
          double b = 0.0;
          for (std::size_t x = 0; x < x_size_; ++x) b += (*this)(x, j, i, y);
          worst = std::max(worst, std::abs(b - marginal_b_(y, j)));
        }
      }
    return worst;
  }

  /// (1/k) sum_{x,y,i} W(y|x) P(x,i|i,y).
  double success_probability(const Channel& w) const {
    double total = 0.0;
    for (std::size_t x = 0; x < x_size_; ++x)
      for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t y = 0; y < y_size_; ++y) total += w(x, y) * (*this)(x, i, i, y);
    return total / static_cast<double>(k_);
  }

 private:
  std::size_t x_size_, y_size_, k_;
  std::vector<double> probs_;
  Matrix marginal_a_;
  Matrix marginal_b_;
};

namespace detail {

// Raises r[.][y] toward p in input order until sum_x r[x][y] = 1. Possible
// because sum_x p = k >= 1; W >= 0 means the objective cannot drop.
inline Matrix saturate_columns(const LPSolution& sol) {
  Matrix r = sol.r;
  for (std::size_t y = 0; y < r.cols(); ++y) {
    double deficit = 1.0;
    for (std::size_t x = 0; x < r.rows(); ++x) {
      r(x, y) = std::clamp(r(x, y), 0.0, sol.p[x]);
      deficit -= r(x, y);
    }
    for (std::size_t x = 0; x < r.rows() && deficit > 0.0; ++x) {
      const double add = std::min(std::max(0.0, sol.p[x] - r(x, y)), deficit);
      r(x, y) += add;
      deficit -= add;
    }
  }
  return r;
}

}  // namespace detail

/// Box with P(x,j|i,y) = r/k on i = j and (p - r)/(k(k-1)) off it.
/// Columns of r are first saturated to sum to one (see saturate_columns);
/// at an LP optimum this leaves the objective unchanged.
inline NSBox box_from_lp(const LPSolution& sol) {
  validate_solution(sol);
  const std::size_t xs = sol.p.size(), ys = sol.r.cols(), k = sol.k;
  const Matrix r = detail::saturate_columns(sol);
  NSBox box(xs, ys, k);
  const double kd = static_cast<double>(k);
  for (std::size_t x = 0; x < xs; ++x)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t y = 0; y < ys; ++y)
          box(x, j, i, y) = i == j ? r(x, y) / kd
                                   : std::max(0.0, sol.p[x] - r(x, y)) / (kd * (kd - 1.0));
  box.refresh_marginals();
  return box;
}

/// Deterministic box realizing a classical code: x = e(i), j = d(y).
inline NSBox box_from_code(const Code& code, std::size_t x_size, std::size_t y_size) {
  NSBox box(x_size, y_size, code.k);
  for (std::size_t i = 0; i < code.k; ++i)
    for (std::size_t y = 0; y < y_size; ++y) box(code.encode(i), code.decoder[y], i, y) = 1.0;
  box.refresh_marginals();
  return box;
}

/// r[x][y] = sum_i P(x,i|i,y), p[x] = sum_i P_A(x|i), then p is clipped at 1
/// and the shortfall is added back in input order while staying <= 1.
inline LPSolution lp_from_box(const NSBox& box, const Channel& w, std::size_t k) {
  require_k_within_inputs(w, k);
  if (box.k() != k || box.x_size() != w.x_size() || box.y_size() != w.y_size())
    throw Error(Errc::InvalidArgument, "box shape does not match channel and k");
  LPSolution sol;
  sol.k = k;
  sol.r = Matrix(w.x_size(), w.y_size());
  sol.p.assign(w.x_size(), 0.0);
  for (std::size_t x = 0; x < w.x_size(); ++x) {
    for (std::size_t y = 0; y < w.y_size(); ++y) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += box(x, i, i, y);
      sol.r(x, y) = s;
    }
    for (std::size_t i = 0; i < k; ++i) sol.p[x] += box.marginal_a()(i, x);
  }
  double total = 0.0;
  for (double& v : sol.p) total += (v = std::min(v, 1.0));
  double deficit = static_cast<double>(k) - total;
  for (std::size_t x = 0; x < sol.p.size() && deficit > 0.0; ++x) {
    const double add = std::min(1.0 - sol.p[x], deficit);
    sol.p[x] += add;
    deficit -= add;
  }
  sol.value = ns_objective(w, sol.r, k);
  return sol;
}

}  // namespace oneshot
