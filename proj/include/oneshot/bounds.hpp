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

// Verifiers for the inequalities relating the classical optimum, the greedy
// code, random codes and the non-signaling relaxation, and closed forms for
// the subset-channel family that makes the ratio bound tight.
//
// Every verifier reports signed residuals (lhs - rhs for a claimed lhs >= rhs)
// rather than booleans, so tolerance problems show up as tiny negatives.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oneshot/channel.hpp"
#include "oneshot/coding.hpp"
#include "oneshot/error.hpp"
#include "oneshot/metaconverse.hpp"
#include "oneshot/ratio.hpp"
#include "oneshot/rounding.hpp"

namespace oneshot {

struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // lhs - rhs
  bool passed = false;
};

inline Check make_check(std::string name, double lhs, double rhs, double tol) {
  const double residual = lhs - rhs;
  return {std::move(name), lhs, rhs, residual, residual >= -tol};
}

struct BoundReport {
  std::string channel_id;
  std::size_t k = 0;
  std::size_t l = 0;
  double s_exact = 0.0;   // S(W,l)
  double s_greedy = 0.0;  // S_greedy(W,l)
  double s_ns_k = 0.0;
  double s_ns_l = 0.0;
  double rounding_expectation = 0.0;
  double ratio = 0.0;  // ratio(k,l)
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

/// Checks, for l, k <= |X|:
///   S_greedy(W,l) >= ratio(k,l) S_NS(W,k)
///   S(W,l)        >= ratio(k,l) S_NS(W,k)
///   E[f(S)]/l     >= ratio(k,l) S_NS(W,k)   (random code from the LP at k)
///   S_NS(W,l)     >= S(W,l)
inline BoundReport verify_theorem3(const Channel& w, std::size_t k, std::size_t l, double tol = 1e-7,
                                   double max_subsets = kDefaultEnumerationCap) {
  require_k_within_inputs(w, k);
  require_k_within_inputs(w, l);
  BoundReport rep;
  rep.channel_id = w.name();
  rep.k = k;
  rep.l = l;
  rep.ratio = ratio(k, l);
  const LPSolution lp_k = ns_value(w, k);
  rep.s_ns_k = lp_k.value;
  rep.s_ns_l = l == k ? lp_k.value : ns_value(w, l).value;
  rep.s_exact = exact_opt(w, l, max_subsets).value;
  rep.s_greedy = greedy(w, l).value;
  rep.rounding_expectation = exact_expected_value(w, lp_k, l);

  const double bound = rep.ratio * rep.s_ns_k;
  rep.checks.push_back(make_check("greedy_vs_ns", rep.s_greedy, bound, tol));
  rep.checks.push_back(make_check("exact_vs_ns", rep.s_exact, bound, tol));
  rep.checks.push_back(make_check("rounding_vs_ns", rep.rounding_expectation, bound, tol));
  rep.checks.push_back(make_check("ns_relaxes_exact", rep.s_ns_l, rep.s_exact, tol));
  return rep;
}

/// Residual of S(W,k) - 1/k >= (1 - (1-1/k)^{k-1}) (S_NS(W,k) - 1/k).
inline double verify_centered(const Channel& w, std::size_t k,
                              double max_subsets = kDefaultEnumerationCap) {
  require_k_within_inputs(w, k);
  const double kd = static_cast<double>(k);
  const double factor = k == 1 ? 0.0 : -std::expm1((kd - 1.0) * std::log1p(-1.0 / kd));
  const double s = exact_opt(w, k, max_subsets).value;
  const double s_ns = ns_value(w, k).value;
  return (s - 1.0 / kd) - factor * (s_ns - 1.0 / kd);
}

/// Residual of f(S) + k (max_x f(S u {x}) - f(S)) >= f_W(p), with k = sum p.
inline double verify_lemma4(const Channel& w, std::span<const std::size_t> set,
                            std::span<const double> p) {
  const double fs = f_value(w, set);
  const double k = std::accumulate(p.begin(), p.end(), 0.0);
  double best = fs;
  std::vector<std::size_t> grown(set.begin(), set.end());
  grown.push_back(0);
  for (std::size_t x = 0; x < w.x_size(); ++x) {
    grown.back() = x;
    best = std::max(best, f_value(w, grown));
  }
  return fs + k * (best - fs) - f_fractional(w, p);
}

/// S(W,l) on make_tightness(k,t): (k/l)(1 - prod_{j<l} (1 - t/(n-j))), n = kt.
inline double tightness_closed_form(std::size_t k, std::size_t t, std::size_t l) {
  const std::size_t n = k * t;
  if (k == 0 || t == 0 || l == 0 || l > n)
    throw Error(Errc::OutOfRange, "tightness closed form needs 1 <= l <= k*t");
  double miss = 1.0;
  for (std::size_t j = 0; j < l; ++j)
    miss *= 1.0 - static_cast<double>(t) / static_cast<double>(n - j);
  return static_cast<double>(k) / static_cast<double>(l) * (1.0 - miss);
}

/// The analytic feasible point for the tightness family at k messages:
/// p[x] = k/n and r[x][y] = k/n whenever x belongs to subset y.
inline LPSolution tightness_lp_point(const Channel& w, std::size_t k) {
  const double share = static_cast<double>(k) / static_cast<double>(w.x_size());
  LPSolution sol;
  sol.k = k;
  sol.p.assign(w.x_size(), share);
  sol.r = Matrix(w.x_size(), w.y_size());
  for (std::size_t x = 0; x < w.x_size(); ++x)
    for (std::size_t y = 0; y < w.y_size(); ++y) sol.r(x, y) = w(x, y) > 0.0 ? share : 0.0;
  sol.value = ns_objective(w, sol.r, k);
  return sol;
}

enum class SweepMethod { Exact, Greedy };

inline std::string_view to_string(SweepMethod m) {
  return m == SweepMethod::Exact ? "exact" : "greedy";
}

struct SweepRow {
  std::size_t l = 0;
  double s_value = 0.0;  // S(W,l), or S_greedy(W,l) when method is Greedy
  double s_ns = 0.0;
  SweepMethod method = SweepMethod::Exact;
};

/// S(W,l) and S_NS(W,l) for l in [l_min, l_max]. Rows whose exact search
/// would exceed `max_subsets` fall back to greedy and are marked as such.
inline std::vector<SweepRow> sweep(const Channel& w, std::size_t l_min, std::size_t l_max,
                                   double max_subsets = kDefaultEnumerationCap) {
  if (l_min == 0 || l_min > l_max) throw Error(Errc::OutOfRange, "sweep needs 1 <= l_min <= l_max");
  require_k_within_inputs(w, l_max);
  std::vector<SweepRow> rows;
  for (std::size_t l = l_min; l <= l_max; ++l) {
    SweepRow row;
    row.l = l;
    if (detail::binomial(w.x_size(), l) <= max_subsets) {
      row.s_value = exact_opt(w, l, max_subsets).value;
      row.method = SweepMethod::Exact;
    } else {
      row.s_value = greedy(w, l).value;
      row.method = SweepMethod::Greedy;
    }
    row.s_ns = ns_value(w, l).value;
    rows.push_back(row);
  }
  return rows;
}

/// CSV with header `l,s_method,s_value,s_ns,method`. s_method names the
/// classical quantity in the row ("S" or "S_greedy").
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "l,s_method,s_value,s_ns,method\n";
  for (const auto& r : rows)
    out << r.l << ',' << (r.method == SweepMethod::Exact ? "S" : "S_greedy") << ',' << r.s_value
        << ',' << r.s_ns << ',' << to_string(r.method) << '\n';
  return out.str();
}

}  // namespace oneshot
