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
#include <random>

#include "qmeas/linalg.h"

namespace qmeas {

/// Unit-norm state vector. Normalization is checked, never silently applied.
class PureState {
  public:
    static constexpr double kNormTolerance = 1e-10;

    /// Throws NotNormalized if |‖amplitudes‖² − 1| > kNormTolerance.
    explicit PureState(ComplexVector amplitudes);

    /// Computational basis vector e_index.
    static PureState basis(std::size_t dim, std::size_t index);
    /// Rescales a nonzero vector onto the unit sphere.
    static PureState normalized(const ComplexVector &v);

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const ComplexVector &amplitudes() const { return amplitudes_; }

  private:
    ComplexVector amplitudes_;
};

/// Hermitian, PSD, unit-trace operator.
class DensityMatrix {
  public:
    static constexpr double kTraceTolerance = 1e-10;

    explicit DensityMatrix(ComplexMatrix matrix, const Tolerance &tol = {});

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const ComplexMatrix &matrix() const { return matrix_; }

  private:
    ComplexMatrix matrix_;
};

DensityMatrix density_from_pure(const PureState &psi);

/// <psi|phi>, conjugate-linear in the first argument.
Complex overlap(const PureState &psi, const PureState &phi);

/// Kronecker product, system-major: index = j * dim(b) + k.
PureState tensor_product_state(const PureState &a, const PureState &b);
ComplexMatrix tensor_product_op(const ComplexMatrix &a, const ComplexMatrix &b);

/// Haar-distributed pure state drawn from the given engine.
PureState random_pure_state(std::size_t dim, std::mt19937_64 &rng);

}  // namespace qmeas
