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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmeas/error.h"
#include "qmeas/linalg.h"
#include "qmeas/measurement.h"
#include "qmeas/states.h"

namespace qmeas {

/// Residual bound every dilation identity must meet.
inline constexpr double kDilationTolerance = 1e-9;

/// Each effect Q_i split into rank-one pieces |mu_j><mu_j| with
/// |mu_j> = sqrt(lambda_j) |psi_j> taken from its eigendecomposition.
struct RankOneRefinement {
    std::size_t original_dim = 0;
    std::vector<ComplexVector> vectors;     // fine outcomes, grouped by parent
    std::vector<std::size_t> parent;        // fine index -> index into coarse_labels
    std::vector<std::string> fine_labels;   // "<coarse>.<r>"
    std::vector<std::string> coarse_labels; // original outcome order

    std::size_t fine_count() const { return vectors.size(); }
};

/// Columns are the measurement vectors zero-padded to max(k, N) rows.
struct MeasurementMatrix {
    std::size_t original_dim = 0;
    ComplexMatrix matrix;
};

/// Enlarged-space PVM realizing a POVM: Q_j = P_U P_j P_U with P_U the
/// projector onto the first original_dim coordinates.
struct NeumarkDilation {
    std::size_t original_dim = 0;
    std::size_t enlarged_dim = 0;
    ComplexMatrix measurement_matrix; // M
    ComplexMatrix extended_matrix;    // M-tilde, orthonormal columns
    ComplexMatrix subspace_projector; // P_U
    PvmSet pvm;                       // P_j = |p_j><p_j|, labelled by fine label
    std::vector<std::size_t> parent;
    std::vector<std::string> coarse_labels;
};

class DilationError : public Error {
  public:
    DilationError(std::string identity, double residual);

    const std::string &identity() const noexcept { return identity_; }
    double residual() const noexcept { return residual_; }

  private:
    std::string identity_;
    double residual_;
};

struct DilationResiduals {
    double subspace_projector = 0.0; // max |M M^dagger - P_U|
    double orthonormality = 0.0;     // max |M~^dagger M~ - I|
    double projection = 0.0;         // max |P_U M~ - M|
    double fine_effect = 0.0;        // max_j max |mu_j mu_j^dagger - P_U P_j P_U|
};

struct DilationReport {
    DilationResiduals residuals;
    double coarse_effect = 0.0; // max_i max |Q_i - sum_{j in i} P_U P_j P_U| on the subspace block
    std::uint64_t trials = 0;
    std::optional<double> probability_discrepancy;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

struct DilatedDistribution {
    OutcomeDistribution fine;
    OutcomeDistribution coarse;
};

/// Eigenvalues at or below 1e-12 * ||Q_i|| are treated as zero.
RankOneRefinement refine_to_rank_one(const PovmSet &povm, const Tolerance &tol = {});

MeasurementMatrix measurement_matrix(const RankOneRefinement &r);

ComplexMatrix subspace_projector(std::size_t original_dim, std::size_t enlarged_dim);

/// SVD-based extension of M to orthonormal columns. Throws DilationError
/// naming the worst identity when any residual exceeds kDilationTolerance.
NeumarkDilation dilate(const RankOneRefinement &r, const Tolerance &tol = {});

DilationResiduals dilation_residuals(const NeumarkDilation &d);

/// `psi` lives on the original space and is zero-padded into the enlarged one.
DilatedDistribution dilated_probabilities(const NeumarkDilation &d, const PureState &psi);

/// Never throws on a failing dilation; failures are listed in the report.
DilationReport verify_dilation(const NeumarkDilation &d, const PovmSet &original, std::uint64_t trials,
                               std::uint64_t seed);

}  // namespace qmeas
