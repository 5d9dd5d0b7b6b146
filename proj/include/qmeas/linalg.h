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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qmeas {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Absolute/relative tolerance pair. The relative part is scaled by the
/// norm proxy max|a_ij| * dim, an upper bound on the spectral norm.
struct Tolerance {
    double atol = 1e-10;
    double rtol = 1e-9;

    /// Throws ValidationFailure when either component is negative or NaN.
    void check() const;
    double bound(const ComplexMatrix &reference) const;
};

struct EigenDecomposition {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // column j pairs with eigenvalues[j]
};

struct SvdResult {
    ComplexMatrix left;  // n x n unitary
    RealVector singulars; // min(n, N) entries, descending
    ComplexMatrix right; // N x N unitary
};

double max_abs(const ComplexMatrix &a);
double norm_proxy(const ComplexMatrix &a);
bool all_finite(const ComplexMatrix &a);

ComplexMatrix adjoint(const ComplexMatrix &a);
ComplexMatrix outer(const ComplexVector &x, const ComplexVector &y);

EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix &h,
                                                const Tolerance &tol = {});
SvdResult singular_value_decomposition(const ComplexMatrix &m);

/// Principal square root of a PSD matrix. Eigenvalues inside the negative
/// tolerance band are clamped to zero before taking the root.
ComplexMatrix psd_sqrt(const ComplexMatrix &q, const Tolerance &tol = {});

bool is_hermitian(const ComplexMatrix &a, const Tolerance &tol = {});
/// Throws NotHermitian when `a` fails is_hermitian.
bool is_psd(const ComplexMatrix &a, const Tolerance &tol = {});
/// Idempotency is measured in the Frobenius norm, which bounds every
/// eigenvalue's distance from {0, 1}; a matrix passing this predicate
/// therefore also passes is_psd at the same tolerance.
bool is_projector(const ComplexMatrix &a, const Tolerance &tol = {});
/// Throws ShapeMismatch when the operators are not all the same square shape.
bool is_resolution_of_identity(std::span<const ComplexMatrix> ops,
                               const Tolerance &tol = {});
bool is_unitary(const ComplexMatrix &a, const Tolerance &tol = {});

}  // namespace qmeas
