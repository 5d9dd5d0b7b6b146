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

#include "qmeas/error.h"

namespace qmeas {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotPsd: return "NotPsd";
        case ErrorKind::NotIdempotent: return "NotIdempotent";
        case ErrorKind::NotOrthogonal: return "NotOrthogonal";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::IncompleteResolution: return "IncompleteResolution";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::ZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::ParallelStates: return "ParallelStates";
        case ErrorKind::InfeasibleParameter: return "InfeasibleParameter";
        case ErrorKind::DilationVerificationFailure: return "DilationVerificationFailure";
        case ErrorKind::CompletionFailure: return "CompletionFailure";
        case ErrorKind::ValidationFailure: return "ValidationFailure";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &message, std::optional<std::size_t> first,
             std::optional<std::size_t> second)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
      kind_(kind),
      first_(first),
      second_(second) {
}

}  // namespace qmeas
