// Copyright 2026 The qmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qmeas {

enum class ErrorKind {
    ShapeMismatch,
    NonFinite,
    NotHermitian,
    NotPsd,
    NotIdempotent,
    NotOrthogonal,
    NotUnitary,
    IncompleteResolution,
    ConvergenceFailure,
    NotNormalized,
    ZeroProbabilityOutcome,
    UnknownLabel,
    ParallelStates,
    InfeasibleParameter,
    DilationVerificationFailure,
    CompletionFailure,
    ValidationFailure,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every domain failure raised by the library. `first` and `second` carry the
/// offending outcome indices when the failure is tied to specific operators
/// (e.g. NotOrthogonal(i, j)).
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message,
          std::optional<std::size_t> first = std::nullopt,
          std::optional<std::size_t> second = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::size_t> first() const noexcept { return first_; }
    std::optional<std::size_t> second() const noexcept { return second_; }

  private:
    ErrorKind kind_;
    std::optional<std::size_t> first_;
    std::optional<std::size_t> second_;
};

}  // namespace qmeas
