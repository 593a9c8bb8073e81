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

// Random codes drawn from an LP solution: l codewords sampled i.i.d. from
// p/k, with duplicates collapsing. The expected coverage has a closed form:
// for each output y, order inputs by decreasing W(y|x) and write
// Q_i = p_{x_1} + ... + p_{x_i}; then
//
//   E[max_{x in S} W(y|x)] = sum_i W(y|x_i) ((1 - Q_{i-1}/k)^l - (1 - Q_i/k)^l).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "oneshot/channel.hpp"
#include "oneshot/coding.hpp"
#include "oneshot/error.hpp"
#include "oneshot/metaconverse.hpp"
#include "oneshot/random.hpp"
#include "oneshot/ratio.hpp"

namespace oneshot {

namespace detail {

inline void check_sampling_distribution(const LPSolution& sol) {
  if (sol.k == 0 || sol.p.empty()) throw Error(Errc::DegenerateDistribution, "empty distribution");
  double sum = 0.0;
  for (double v : sol.p) {
    if (v < -1e-9) throw Error(Errc::DegenerateDistribution, "negative p entry");
    sum += std::max(0.0, v);
  }
  if (std::abs(sum - static_cast<double>(sol.k)) > 1e-7)
    throw Error(Errc::DegenerateDistribution,
                "sum of p is " + std::to_string(sum) + ", expected " + std::to_string(sol.k));
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

/// Draws l inputs i.i.d. from p/k and returns the ML code on the distinct
/// draws (in order of first appearance) for l messages.
inline Code sample_code(const Channel& w, const LPSolution& sol, std::size_t l, std::uint64_t seed) {
  if (l == 0) throw Error(Errc::OutOfRange, "l must be >= 1");
  detail::check_sampling_distribution(sol);
  if (sol.p.size() != w.x_size()) throw Error(Errc::InvalidArgument, "solution does not match channel");
  std::vector<double> weights(sol.p.size());
  for (std::size_t x = 0; x < weights.size(); ++x) weights[x] = std::max(0.0, sol.p[x]);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  Rng rng(seed);
  std::vector<std::size_t> codewords;
  std::vector<bool> seen(w.x_size(), false);
  for (std::size_t draw = 0; draw < l; ++draw) {
    const std::size_t x = rng.categorical(weights, total);
    if (!seen[x]) {
      seen[x] = true;
      codewords.push_back(x);
    }
  }
  return make_code(w, std::move(codewords), l);
}

/// E[f_W(S)] / l for S made of l i.i.d. draws from p/k.
inline double exact_expected_value(const Channel& w, const LPSolution& sol, std::size_t l) {
  if (l == 0) throw Error(Errc::OutOfRange, "l must be >= 1");
  detail::check_sampling_distribution(sol);
  if (sol.p.size() != w.x_size()) throw Error(Errc::InvalidArgument, "solution does not match channel");
  const double kd = static_cast<double>(sol.k);
  const double ld = static_cast<double>(l);
  std::vector<std::size_t> order(w.x_size());
  double total = 0.0;
  for (std::size_t y = 0; y < w.y_size(); ++y) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return w(a, y) > w(b, y); });
    double prefix = 0.0;
    double miss_prev = 1.0;  // P(none of x_1..x_{i-1} drawn)
    for (std::size_t x : order) {
      prefix += std::max(0.0, sol.p[x]);
      const double miss = std::pow(std::max(0.0, 1.0 - prefix / kd), ld);
      total += w(x, y) * (miss_prev - miss);
      miss_prev = miss;
    }
  }
  return total / ld;
}

struct RoundingReport {
  std::size_t k = 0;
  std::size_t l = 0;
  double exact_expectation = 0.0;
  double mc_mean = 0.0;
  double mc_stddev = 0.0;
  std::size_t mc_trials = 0;
  /// ratio(k,l) * S_NS(W,k).
  double bound = 0.0;
  std::uint64_t seed = 0;

  double standard_error() const {
    return mc_trials ? mc_stddev / std::sqrt(static_cast<double>(mc_trials)) : 0.0;
  }
  /// |mean - exact| within four standard errors (or 1e-12 when the samples
  /// are all identical).
  bool consistent() const {
    return std::abs(mc_mean - exact_expectation) <= std::max(4.0 * standard_error(), 1e-12);
  }
};

/// Averages f_W(S)/l over `trials` sampled codes. Trial t uses the seed
/// derive_seed(seed, t), so results do not depend on evaluation order.
inline RoundingReport monte_carlo(const Channel& w, const LPSolution& sol, std::size_t l,
                                  std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(Errc::OutOfRange, "trials must be >= 1");
  RoundingReport rep;
  rep.k = sol.k;
  rep.l = l;
  rep.seed = seed;
  rep.mc_trials = trials;
  rep.exact_expectation = exact_expected_value(w, sol, l);
  rep.bound = ratio(sol.k, l) * sol.value;
  const double ld = static_cast<double>(l);

  std::vector<double> values(trials);
  detail::CompensatedSum sum;
  for (std::size_t t = 0; t < trials; ++t) {
    const Code code = sample_code(w, sol, l, derive_seed(seed, t));
    values[t] = f_value(w, code.codewords) / ld;
    sum.add(values[t]);
  }
  rep.mc_mean = sum.value() / static_cast<double>(trials);
  if (trials > 1) {
    detail::CompensatedSum sq;
    for (double v : values) sq.add((v - rep.mc_mean) * (v - rep.mc_mean));
    rep.mc_stddev = std::sqrt(sq.value() / static_cast<double>(trials - 1));
  }
  return rep;
}

}  // namespace oneshot
