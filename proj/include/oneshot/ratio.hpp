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

#pragma once

#include <cmath>
#include <cstddef>

#include "oneshot/error.hpp"

namespace oneshot {

/// (k/l) (1 - (1 - 1/k)^l), the guaranteed fraction of S_NS(W,k) that l
/// messages achieve classically. The power is evaluated as
/// expm1(l * log1p(-1/k)) so large k does not cancel.
inline double ratio(std::size_t k, std::size_t l) {
  if (k == 0 || l == 0) throw Error(Errc::OutOfRange, "ratio needs k, l >= 1");
  const double kd = static_cast<double>(k), ld = static_cast<double>(l);
  if (k == 1) return 1.0 / ld;
  return (kd / ld) * -std::expm1(ld * std::log1p(-1.0 / kd));
}

struct RatioLowerBounds {
  double exp_form = 0.0;        // (k/l)(1 - e^{-l/k})
  double expansion_form = 0.0;  // 1 - l/(2k)
};

/// Lower bounds on ratio(k,l); the expansion form is only a bound for l <= k.
inline RatioLowerBounds ratio_lower_bounds(std::size_t k, std::size_t l) {
  if (k == 0 || l == 0) throw Error(Errc::OutOfRange, "ratio needs k, l >= 1");
  const double kd = static_cast<double>(k), ld = static_cast<double>(l);
  return {(kd / ld) * -std::expm1(-ld / kd), 1.0 - ld / (2.0 * kd)};
}

}  // namespace oneshot
