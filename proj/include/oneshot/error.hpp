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

#include <stdexcept>
#include <string>
#include <string_view>

namespace oneshot {

enum class Errc {
  InvalidArgument,
  NegativeEntry,
  RowSumViolation,
  OutOfRange,
  SizeCapExceeded,
  InvalidSetSystem,
  IndexOutOfRange,
  EnumerationCapExceeded,
  StochasticityViolation,
  EmptySet,
  KExceedsInputAlphabet,
  InvalidSolution,
  InvalidDistribution,
  DegenerateDistribution,
  InfeasiblePoint,
  NumericalFailure,
  ParseError,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::RowSumViolation: return "RowSumViolation";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::InvalidSetSystem: return "InvalidSetSystem";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case Errc::StochasticityViolation: return "StochasticityViolation";
    case Errc::EmptySet: return "EmptySet";
    case Errc::KExceedsInputAlphabet: return "KExceedsInputAlphabet";
    case Errc::InvalidSolution: return "InvalidSolution";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::DegenerateDistribution: return "DegenerateDistribution";
    case Errc::InfeasiblePoint: return "InfeasiblePoint";
    case Errc::NumericalFailure: return "NumericalFailure";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI's exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace oneshot
