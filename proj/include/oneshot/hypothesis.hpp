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

// Hypothesis-testing view of the non-signaling value.
//
//   beta_alpha(P, Q) = min { sum_z Q(z) T(z) : T in [0,1]^Z, sum_z P(z) T(z) >= alpha }
//
// and, for a channel W and input distribution mu,
//
//   max_nu beta_{1-1/k}(mu x nu, mu W)
//     = min { sum_{x,y} mu(x) W(y|x) T(x,y) : sum_x mu(x) T(x,y) >= 1 - 1/k for all y }.
//
// Minimizing the latter over mu gives 1 - S_NS(W,k); the minimizing mu is
// p/k from an optimal LP solution.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "oneshot/channel.hpp"
#include "oneshot/error.hpp"
#include "oneshot/matrix.hpp"
#include "oneshot/metaconverse.hpp"
#include "oneshot/random.hpp"
#include "oneshot/simplex.hpp"

namespace oneshot {

inline void validate_distribution(std::span<const double> dist, const char* what = "distribution") {
  if (dist.empty()) throw Error(Errc::InvalidDistribution, std::string(what) + " is empty");
  double sum = 0.0;
  for (double v : dist) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error(Errc::InvalidDistribution, std::string(what) + " has a negative or non-finite entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(Errc::InvalidDistribution, std::string(what) + " sums to " + std::to_string(sum));
}

struct TestResult {
  double value = 0.0;
  std::vector<double> test;  // T(z) in [0,1]
};

namespace detail {

inline void check_pair(std::span<const double> p, std::span<const double> q, double alpha) {
  validate_distribution(p, "P");
  validate_distribution(q, "Q");
  if (p.size() != q.size()) throw Error(Errc::InvalidDistribution, "P and Q differ in support size");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(Errc::OutOfRange, "alpha must lie in [0,1]");
}

}  // namespace detail

/// beta_alpha(P, Q) solved as a linear program over the test T.
inline TestResult beta(std::span<const double> p, std::span<const double> q, double alpha) {
  detail::check_pair(p, q, alpha);
  const std::size_t n = p.size();
  LinearProgram lp(n);
  for (std::size_t z = 0; z < n; ++z) {
    lp.objective[z] = -q[z];
    lp.upper[z] = 1.0;
  }
  lp.add(std::vector<double>(p.begin(), p.end()), Relation::GreaterEqual, alpha);
  const LPResult res = solve(lp);
  if (res.status != LPStatus::Optimal)
    throw Error(Errc::NumericalFailure, "beta LP returned " + std::string(to_string(res.status)));
  TestResult out;
  out.test = res.primal;
  for (std::size_t z = 0; z < n; ++z) out.value += q[z] * out.test[z];
  return out;
}

/// Neyman-Pearson construction: accept outcomes in decreasing likelihood
/// ratio P/Q (Q = 0 first, ties to the smaller index) until the acceptance
/// probability under P reaches alpha, randomizing on the boundary outcome.
inline TestResult beta_neyman_pearson(std::span<const double> p, std::span<const double> q,
                                      double alpha) {
  detail::check_pair(p, q, alpha);
  const std::size_t n = p.size();
  std::vector<std::size_t> order;
  for (std::size_t z = 0; z < n; ++z)
    if (p[z] > 0.0) order.push_back(z);
  // Compare P(a)/Q(a) > P(b)/Q(b) without dividing.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] * q[b] > p[b] * q[a]; });
  TestResult out;
  out.test.assign(n, 0.0);
  double accepted = 0.0;
  for (std::size_t z : order) {
    if (accepted >= alpha) break;
    const double need = alpha - accepted;
    const double t = need >= p[z] ? 1.0 : need / p[z];
    out.test[z] = t;
    accepted += t * p[z];
  }
  for (std::size_t z = 0; z < n; ++z) out.value += q[z] * out.test[z];
  return out;
}

/// Joint distribution mu(x) nu(y) flattened row-major over X x Y.
inline std::vector<double> product_distribution(std::span<const double> mu, std::span<const double> nu) {
  std::vector<double> out;
  out.reserve(mu.size() * nu.size());
  for (double a : mu)
    for (double b : nu) out.push_back(a * b);
  return out;
}

/// Joint distribution mu(x) W(y|x) flattened row-major over X x Y.
inline std::vector<double> joint_distribution(const Channel& w, std::span<const double> mu) {
  std::vector<double> out;
  out.reserve(w.x_size() * w.y_size());
  for (std::size_t x = 0; x < w.x_size(); ++x)
    for (std::size_t y = 0; y < w.y_size(); ++y) out.push_back(mu[x] * w(x, y));
  return out;
}

struct ChannelTest {
  std::vector<double> mu;
  Matrix test;  // T(x,y), |X| x |Y|
  double value = 0.0;
};

inline double channel_test_value(const Channel& w, std::span<const double> mu, const Matrix& t) {
  double total = 0.0;
  for (std::size_t x = 0; x < w.x_size(); ++x)
    for (std::size_t y = 0; y < w.y_size(); ++y) total += mu[x] * w(x, y) * t(x, y);
  return total;
}

/// min over y of sum_x mu(x) T(x,y). A test is admissible for k messages
/// when this is >= 1 - 1/k.
inline double channel_test_acceptance(std::span<const double> mu, const Matrix& t) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t y = 0; y < t.cols(); ++y) {
    double s = 0.0;
    for (std::size_t x = 0; x < t.rows(); ++x) s += mu[x] * t(x, y);
    worst = std::min(worst, s);
  }
  return worst;
}

/// max over nu of beta_{1-1/k}(mu x nu, mu W), computed as the equivalent
/// minimization over channel tests.
inline ChannelTest max_nu_beta(const Channel& w, std::size_t k, std::span<const double> mu) {
  require_k_within_inputs(w, k);
  if (mu.size() != w.x_size()) throw Error(Errc::InvalidDistribution, "mu has wrong dimension");
  validate_distribution(mu, "mu");
  const std::size_t xs = w.x_size(), ys = w.y_size();
  LinearProgram lp(xs * ys);
  for (std::size_t x = 0; x < xs; ++x)
    for (std::size_t y = 0; y < ys; ++y) {
      lp.objective[x * ys + y] = -mu[x] * w(x, y);
      lp.upper[x * ys + y] = 1.0;
    }
  const double alpha = 1.0 - 1.0 / static_cast<double>(k);
  for (std::size_t y = 0; y < ys; ++y) {
    std::vector<double> row(xs * ys, 0.0);
    for (std::size_t x = 0; x < xs; ++x) row[x * ys + y] = mu[x];
    lp.add(std::move(row), Relation::GreaterEqual, alpha);
  }
  const LPResult res = solve(lp);
  if (res.status != LPStatus::Optimal)
    throw Error(Errc::NumericalFailure, "channel test LP returned " + std::string(to_string(res.status)));
  ChannelTest out;
  out.mu.assign(mu.begin(), mu.end());
  out.test = Matrix(xs, ys);
  for (std::size_t x = 0; x < xs; ++x)
    for (std::size_t y = 0; y < ys; ++y) out.test(x, y) = res.primal[x * ys + y];
  out.value = channel_test_value(w, mu, out.test);
  return out;
}

/// mu = p/k and T(x,y) = 1 - r[x][y]/p[x] (T = 1 where p[x] = 0).
inline ChannelTest test_from_lp(const Channel& w, const LPSolution& sol) {
  validate_solution(sol);
  if (sol.p.size() != w.x_size() || sol.r.cols() != w.y_size())
    throw Error(Errc::InvalidSolution, "solution shape does not match channel");
  const double kd = static_cast<double>(sol.k);
  ChannelTest out;
  out.mu.resize(w.x_size());
  out.test = Matrix(w.x_size(), w.y_size(), 1.0);
  for (std::size_t x = 0; x < w.x_size(); ++x) {
    out.mu[x] = std::max(0.0, sol.p[x]) / kd;
    if (sol.p[x] <= 0.0) continue;
    for (std::size_t y = 0; y < w.y_size(); ++y)
      out.test(x, y) = std::clamp(1.0 - sol.r(x, y) / sol.p[x], 0.0, 1.0);
  }
  out.value = channel_test_value(w, out.mu, out.test);
  return out;
}

struct MinMaxBetaReport {
  std::size_t k = 0;
  double ns_value = 0.0;
  /// max_nu beta at mu = p/k from the LP optimum.
  double at_lp_mu = 0.0;
  /// Smallest max_nu beta over the random mu samples.
  double min_random_mu = 0.0;
  std::size_t samples = 0;
  bool optimal_mu_matches = false;
  bool random_mu_bounded = false;

  bool passed() const { return optimal_mu_matches && random_mu_bounded; }
};

/// Checks 1 - S_NS(W,k) = min_mu max_nu beta numerically: equality at the
/// LP's mu, and no random mu doing better.
inline MinMaxBetaReport verify_min_max_beta(const Channel& w, std::size_t k, std::uint64_t seed = 0,
                                           std::size_t samples = 20, double tol = 1e-6) {
  const LPSolution sol = ns_value(w, k);
  MinMaxBetaReport rep;
  rep.k = k;
  rep.ns_value = sol.value;
  rep.samples = samples;
  const double target = 1.0 - sol.value;

  std::vector<double> mu(w.x_size());
  for (std::size_t x = 0; x < w.x_size(); ++x)
    mu[x] = std::max(0.0, sol.p[x]) / static_cast<double>(k);
  const double s = std::accumulate(mu.begin(), mu.end(), 0.0);
  for (double& v : mu) v /= s;
  rep.at_lp_mu = max_nu_beta(w, k, mu).value;
  rep.optimal_mu_matches = std::abs(rep.at_lp_mu - target) <= tol;

  Rng rng(seed);
  rep.min_random_mu = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    double total = 0.0;
    for (double& v : mu) total += (v = rng.uniform());
    for (double& v : mu) v /= total;
    rep.min_random_mu = std::min(rep.min_random_mu, max_nu_beta(w, k, mu).value);
  }
  rep.random_mu_bounded = samples == 0 || rep.min_random_mu >= target - tol;
  return rep;
}

}  // namespace oneshot
