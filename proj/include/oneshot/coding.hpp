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

// One-shot coding as monotone submodular maximization.
//
// With a maximum-likelihood decoder, the best success probability for k
// messages is (1/k) * max_{|S| <= k} f_W(S), where
//
//   f_W(S) = sum_y max_{x in S} W(y|x).
//
// This header evaluates f_W, finds the optimum by exhaustive search, runs the
// greedy algorithm (naive and lazy), and converts codeword sets into explicit
// encoder/decoder pairs.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "oneshot/channel.hpp"
#include "oneshot/error.hpp"
#include "oneshot/matrix.hpp"

namespace oneshot {

inline constexpr double kDefaultEnumerationCap = 1e7;

inline double f_value(const Channel& w, std::span<const std::size_t> set) {
  for (std::size_t x : set)
    if (x >= w.x_size())
      throw Error(Errc::IndexOutOfRange, "input " + std::to_string(x) + " outside alphabet");
  if (set.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t y = 0; y < w.y_size(); ++y) {
    double best = 0.0;
    for (std::size_t x : set) best = std::max(best, w(x, y));
    total += best;
  }
  return total;
}

/// Order-infinity mutual information log2 f_W(S), in bits.
inline double i_infinity(const Channel& w, std::span<const std::size_t> set) {
  if (set.empty()) throw Error(Errc::EmptySet, "I_inf needs a nonempty input set");
  return std::log2(f_value(w, set));
}

/// Codewords x_0..x_{l-1} for k messages with the maximum-likelihood decoder.
/// Messages i >= l reuse codeword x_0. Indices are zero-based.
struct Code {
  std::size_t k = 0;
  std::vector<std::size_t> codewords;
  /// decoder[y] = smallest i maximizing W(y|x_i).
  std::vector<std::size_t> decoder;

  std::size_t encode(std::size_t message) const {
    return message < codewords.size() ? codewords[message] : codewords.front();
  }

  /// k x |X| stochastic encoder e(x|i).
  Matrix encoder_matrix(std::size_t x_size) const {
    Matrix e(k, x_size);
    for (std::size_t i = 0; i < k; ++i) e(i, encode(i)) = 1.0;
    return e;
  }

  /// |Y| x k stochastic decoder d(i|y).
  Matrix decoder_matrix() const {
    Matrix d(decoder.size(), k);
    for (std::size_t y = 0; y < decoder.size(); ++y) d(y, decoder[y]) = 1.0;
    return d;
  }
};

inline Code make_code(const Channel& w, std::vector<std::size_t> codewords, std::size_t k) {
  if (codewords.empty()) throw Error(Errc::EmptySet, "a code needs at least one codeword");
  if (k < codewords.size())
    throw Error(Errc::InvalidArgument, "more codewords than messages");
  std::vector<bool> seen(w.x_size(), false);
  for (std::size_t x : codewords) {
    if (x >= w.x_size())
      throw Error(Errc::IndexOutOfRange, "codeword " + std::to_string(x) + " outside alphabet");
    if (seen[x]) throw Error(Errc::InvalidArgument, "codewords must be distinct");
    seen[x] = true;
  }
  Code code;
  code.k = k;
  code.codewords = std::move(codewords);
  code.decoder.resize(w.y_size());
  for (std::size_t y = 0; y < w.y_size(); ++y) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < code.codewords.size(); ++i)
      if (w(code.codewords[i], y) > w(code.codewords[best], y)) best = i;
    code.decoder[y] = best;
  }
  return code;
}

/// Success probability (1/k) sum_{x,y,i} e(x|i) W(y|x) d(i|y) of an arbitrary
/// stochastic encoder (k x |X|) and decoder (|Y| x k).
inline double evaluate_pair(const Channel& w, const Matrix& e, const Matrix& d) {
  const std::size_t k = e.rows();
  if (k == 0 || e.cols() != w.x_size() || d.rows() != w.y_size() || d.cols() != k)
    throw Error(Errc::InvalidArgument, "encoder/decoder shapes do not match the channel");
  auto check_rows = [](const Matrix& m, const char* what) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      double sum = 0.0;
      for (double v : m.row(r)) {
        if (v < -kRowSumTolerance)
          throw Error(Errc::StochasticityViolation, std::string(what) + " has a negative entry");
        sum += v;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance)
        throw Error(Errc::StochasticityViolation,
                    std::string(what) + " row " + std::to_string(r) + " sums to " + std::to_string(sum));
    }
  };
  check_rows(e, "encoder");
  check_rows(d, "decoder");
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t x = 0; x < w.x_size(); ++x) {
      if (e(i, x) == 0.0) continue;
      double inner = 0.0;
      for (std::size_t y = 0; y < w.y_size(); ++y) inner += w(x, y) * d(y, i);
      total += e(i, x) * inner;
    }
  return total / static_cast<double>(k);
}

struct CodingResult {
  double value = 0.0;  // success probability
  Code code;
};

/// S(W,k) by enumerating every subset of size min(k, |X|). Ties go to the
/// lexicographically smallest subset.
inline CodingResult exact_opt(const Channel& w, std::size_t k,
                              double max_subsets = kDefaultEnumerationCap) {
  if (k == 0) throw Error(Errc::OutOfRange, "k must be >= 1");
  const std::size_t size = std::min(k, w.x_size());
  const double count = detail::binomial(w.x_size(), size);
  if (count > max_subsets)
    throw Error(Errc::EnumerationCapExceeded, std::to_string(count) + " subsets exceed cap " +
                                                  std::to_string(max_subsets));
  auto combo = detail::first_combination(size);
  std::vector<std::size_t> best_set = combo;
  double best = -1.0;
  do {
    const double v = f_value(w, combo);
    if (v > best + 1e-12) {
      best = v;
      best_set = combo;
    }
  } while (detail::next_combination(combo, w.x_size()));
  return {best / static_cast<double>(k), make_code(w, best_set, k)};
}

struct GreedyTrace {
  /// chain[j] is S_j; chain[0] is empty.
  std::vector<std::vector<std::size_t>> chain;
  /// gains[j] = f(S_{j+1}) - f(S_j).
  std::vector<double> gains;
};

struct GreedyResult {
  double value = 0.0;
  Code code;
  GreedyTrace trace;
};

enum class GreedyMode { Naive, Lazy };

namespace detail {

// Marginal gain as a sum of clipped per-output improvements. Each term is
// non-increasing in cover[y] under floating-point rounding, so stale lazy
// bounds stay valid upper bounds bit-for-bit.
inline double marginal_gain(const Channel& w, std::span<const double> cover, std::size_t x) {
  double gain = 0.0;
  for (std::size_t y = 0; y < w.y_size(); ++y) gain += std::max(0.0, w(x, y) - cover[y]);
  return gain;
}

}  // namespace detail

/// Greedy maximization of f_W over min(k, |X|) steps, ties to the smallest
/// input. Lazy mode keeps stale gains in a priority queue and yields the same
/// chain as the naive scan.
inline GreedyResult greedy(const Channel& w, std::size_t k, GreedyMode mode = GreedyMode::Lazy) {
  if (k == 0) throw Error(Errc::OutOfRange, "k must be >= 1");
  const std::size_t steps = std::min(k, w.x_size());
  std::vector<double> cover(w.y_size(), 0.0);
  std::vector<bool> chosen(w.x_size(), false);
  GreedyTrace trace;
  trace.chain.emplace_back();

  auto take = [&](std::size_t x, double gain) {
    chosen[x] = true;
    for (std::size_t y = 0; y < w.y_size(); ++y) cover[y] = std::max(cover[y], w(x, y));
    auto next = trace.chain.back();
    next.push_back(x);
    trace.chain.push_back(std::move(next));
    trace.gains.push_back(gain);
  };

  if (mode == GreedyMode::Naive) {
    for (std::size_t step = 0; step < steps; ++step) {
      std::size_t best_x = w.x_size();
      double best = -1.0;
      for (std::size_t x = 0; x < w.x_size(); ++x) {
        if (chosen[x]) continue;
        const double g = detail::marginal_gain(w, cover, x);
        if (g > best) {
          best = g;
          best_x = x;
        }
      }
      take(best_x, best);
    }
  } else {
    struct Entry {
      double bound;
      std::size_t x;
      std::size_t round;
    };
    // Max-heap on bound, then min on index.
    auto cmp = [](const Entry& a, const Entry& b) {
      return a.bound < b.bound || (a.bound == b.bound && a.x > b.x);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    for (std::size_t x = 0; x < w.x_size(); ++x) heap.push({detail::marginal_gain(w, cover, x), x, 0});
    for (std::size_t step = 0; step < steps; ++step) {
      for (;;) {
        Entry top = heap.top();
        heap.pop();
        if (top.round == step) {
          take(top.x, top.bound);
          break;
        }
        heap.push({detail::marginal_gain(w, cover, top.x), top.x, step});
      }
    }
  }

  GreedyResult result;
  result.value = f_value(w, trace.chain.back()) / static_cast<double>(k);
  result.code = make_code(w, trace.chain.back(), k);
  result.trace = std::move(trace);
  return result;
}

}  // namespace oneshot
