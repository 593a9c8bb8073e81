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

// Finite channels W(y|x) stored as row-stochastic matrices, plus the
// generators used throughout the tests and the CLI: binary symmetric and
// erasure channels, the subset ("tightness") family, channels built from
// uniform set systems, tensor powers and seeded random channels.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oneshot/error.hpp"
#include "oneshot/random.hpp"

namespace oneshot {

inline constexpr double kRowSumTolerance = 1e-9;
inline constexpr std::size_t kDefaultTightnessCap = 16;
inline constexpr std::size_t kDefaultTensorCap = std::size_t{1} << 22;

namespace detail {

/// Advances `combo` (strictly increasing indices in [0, n)) to the next
/// combination in lexicographic order. Returns false after the last one.
inline bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t k = combo.size();
  if (k == 0) return false;
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (combo[i] < n - k + i) {
      ++combo[i];
      for (std::size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> combo(k);
  for (std::size_t i = 0; i < k; ++i) combo[i] = i;
  return combo;
}

/// Binomial coefficient as a double; exact for the sizes used here.
inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (std::size_t i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(out);
}

}  // namespace detail

class Channel {
 public:
  /// Validates a raw |X|x|Y| matrix. Rows within 1e-9 of summing to one are
  /// rescaled to sum to one exactly.
  static Channel validate(const std::vector<std::vector<double>>& raw, std::string name = {}) {
    if (raw.empty() || raw.front().empty())
      throw Error(Errc::InvalidArgument, "channel matrix must be nonempty");
    const std::size_t cols = raw.front().size();
    std::vector<double> flat;
    flat.reserve(raw.size() * cols);
    for (std::size_t x = 0; x < raw.size(); ++x) {
      const auto& row = raw[x];
      if (row.size() != cols)
        throw Error(Errc::InvalidArgument, "channel matrix must be rectangular (row " +
                                               std::to_string(x) + ")");
      double sum = 0.0;
      for (std::size_t y = 0; y < cols; ++y) {
        const double v = row[y];
        if (!std::isfinite(v))
          throw Error(Errc::InvalidArgument, "non-finite entry in row " + std::to_string(x));
        if (v < 0.0)
          throw Error(Errc::NegativeEntry, "W(" + std::to_string(y) + "|" + std::to_string(x) +
                                               ") = " + std::to_string(v));
        sum += v;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance)
        throw Error(Errc::RowSumViolation,
                    "row " + std::to_string(x) + " sums to " + std::to_string(sum));
      for (double v : row) flat.push_back(v / sum);
    }
    return Channel(raw.size(), cols, std::move(flat), std::move(name));
  }

  std::size_t x_size() const noexcept { return x_size_; }
  std::size_t y_size() const noexcept { return y_size_; }
  const std::string& name() const noexcept { return name_; }

  /// W(y|x).
  double operator()(std::size_t x, std::size_t y) const { return w_[x * y_size_ + y]; }

  std::span<const double> row(std::size_t x) const {
    return {w_.data() + x * y_size_, y_size_};
  }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(x_size_);
    for (std::size_t x = 0; x < x_size_; ++x) out[x].assign(row(x).begin(), row(x).end());
    return out;
  }

  Channel with_name(std::string name) const {
    Channel out = *this;
    out.name_ = std::move(name);
    return out;
  }

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  Channel(std::size_t xs, std::size_t ys, std::vector<double> w, std::string name)
      : x_size_(xs), y_size_(ys), w_(std::move(w)), name_(std::move(name)) {}

  std::size_t x_size_;
  std::size_t y_size_;
  std::vector<double> w_;
  std::string name_;
};

/// Collection of subsets T_x of {0, ..., ground_size-1}, all of size d.
struct SetSystem {
  std::size_t ground_size = 0;
  std::size_t d = 0;
  std::vector<std::vector<std::size_t>> sets;

  void validate() const {
    if (sets.empty()) throw Error(Errc::InvalidSetSystem, "no sets");
    if (d == 0) throw Error(Errc::InvalidSetSystem, "uniform size d must be positive");
    for (std::size_t x = 0; x < sets.size(); ++x) {
      const auto& s = sets[x];
      if (s.size() != d)
        throw Error(Errc::InvalidSetSystem, "set " + std::to_string(x) + " has size " +
                                                std::to_string(s.size()) + ", expected " +
                                                std::to_string(d));
      std::vector<bool> seen(ground_size, false);
      for (std::size_t e : s) {
        if (e >= ground_size)
          throw Error(Errc::InvalidSetSystem, "element " + std::to_string(e) + " of set " +
                                                  std::to_string(x) + " outside ground set");
        if (seen[e])
          throw Error(Errc::InvalidSetSystem, "duplicate element in set " + std::to_string(x));
        seen[e] = true;
      }
    }
  }
};

inline Channel make_bsc(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::OutOfRange, "BSC crossover must be in [0,1]");
  return Channel::validate({{1.0 - p, p}, {p, 1.0 - p}}, "bsc");
}

/// Outputs {0, 1, e}; the erasure symbol is column 2.
inline Channel make_erasure(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw Error(Errc::OutOfRange, "erasure probability must be in [0,1]");
  return Channel::validate({{1.0 - eps, 0.0, eps}, {0.0, 1.0 - eps, eps}}, "erasure");
}

/// Inputs are n = k*t symbols; outputs are the t-subsets of the inputs in
/// lexicographic order, and input x goes uniformly to a subset containing it.
inline Channel make_tightness(std::size_t k, std::size_t t,
                              std::size_t max_inputs = kDefaultTightnessCap) {
  if (k == 0 || t == 0) throw Error(Errc::OutOfRange, "tightness family needs k, t >= 1");
  const std::size_t n = k * t;
  if (n > max_inputs)
    throw Error(Errc::SizeCapExceeded, "k*t = " + std::to_string(n) + " exceeds cap " +
                                           std::to_string(max_inputs));
  std::vector<std::vector<std::size_t>> subsets;
  auto combo = detail::first_combination(t);
  do {
    subsets.push_back(combo);
  } while (detail::next_combination(combo, n));

  const double weight = 1.0 / detail::binomial(n - 1, t - 1);
  std::vector<std::vector<double>> rows(n, std::vector<double>(subsets.size(), 0.0));
  for (std::size_t y = 0; y < subsets.size(); ++y)
    for (std::size_t x : subsets[y]) rows[x][y] = weight;
  return Channel::validate(rows, "tightness(k=" + std::to_string(k) + ",t=" + std::to_string(t) + ")");
}

/// W(y|x) = 1/d on T_x. For every S, d * f_W(S) = |union of T_x over S|.
inline Channel from_set_system(const SetSystem& sys) {
  sys.validate();
  const double w = 1.0 / static_cast<double>(sys.d);
  std::vector<std::vector<double>> rows(sys.sets.size(), std::vector<double>(sys.ground_size, 0.0));
  for (std::size_t x = 0; x < sys.sets.size(); ++x)
    for (std::size_t y : sys.sets[x]) rows[x][y] = w;
  return Channel::validate(rows, "coverage");
}

/// n-fold product channel; tuples are ordered lexicographically with the
/// first coordinate most significant.
inline Channel tensor_power(const Channel& w, std::size_t n,
                            std::size_t max_entries = kDefaultTensorCap) {
  if (n == 0) throw Error(Errc::OutOfRange, "tensor power needs n >= 1");
  double entries = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    entries *= static_cast<double>(w.x_size()) * static_cast<double>(w.y_size());
  if (entries > static_cast<double>(max_entries))
    throw Error(Errc::SizeCapExceeded, "tensor power has " + std::to_string(entries) +
                                           " entries, cap is " + std::to_string(max_entries));
  std::vector<std::vector<double>> rows = w.rows();
  for (std::size_t step = 1; step < n; ++step) {
    std::vector<std::vector<double>> next;
    next.reserve(rows.size() * w.x_size());
    for (const auto& left : rows) {
      for (std::size_t x = 0; x < w.x_size(); ++x) {
        std::vector<double> out;
        out.reserve(left.size() * w.y_size());
        for (double a : left)
          for (double b : w.row(x)) out.push_back(a * b);
        next.push_back(std::move(out));
      }
    }
    rows = std::move(next);
  }
  return Channel::validate(rows, w.name().empty() ? std::string{} : w.name() + "^" + std::to_string(n));
}

/// Rows are independent uniform(0,1) draws, normalized. Same seed, same channel.
inline Channel random_channel(std::size_t x_size, std::size_t y_size, std::uint64_t seed) {
  if (x_size == 0 || y_size == 0) throw Error(Errc::OutOfRange, "alphabet sizes must be >= 1");
  Rng rng(seed);
  std::vector<std::vector<double>> rows(x_size, std::vector<double>(y_size));
  for (auto& row : rows) {
    double sum = 0.0;
    for (double& v : row) sum += (v = rng.uniform());
    for (double& v : row) v /= sum;
  }
  return Channel::validate(rows, "random(" + std::to_string(x_size) + "x" + std::to_string(y_size) +
                                     ",seed=" + std::to_string(seed) + ")");
}

}  // namespace oneshot
