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

#include "qmeas/linalg.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmeas/error.h"

namespace qmeas {

namespace {

void require_square(const ComplexMatrix &a, const char *what) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw Error(ErrorKind::ShapeMismatch,
                    std::string(what) + " requires a nonempty square matrix, got " +
                        std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

void require_finite(const ComplexMatrix &a, const char *what) {
    if (!all_finite(a)) {
        throw Error(ErrorKind::NonFinite, std::string(what) + " received a non-finite entry");
    }
}

}  // namespace

void Tolerance::check() const {
    if (!(atol >= 0.0) || !(rtol >= 0.0)) {
        throw Error(ErrorKind::ValidationFailure, "tolerances must be nonnegative");
    }
}

double Tolerance::bound(const ComplexMatrix &reference) const {
    return atol + rtol * norm_proxy(reference);
}

double max_abs(const ComplexMatrix &a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double norm_proxy(const ComplexMatrix &a) {
    return max_abs(a) * static_cast<double>(std::max(a.rows(), a.cols()));
}

bool all_finite(const ComplexMatrix &a) {
    return a.allFinite();
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    return a.adjoint();
}

ComplexMatrix outer(const ComplexVector &x, const ComplexVector &y) {
    return x * y.adjoint();
}

EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix &h, const Tolerance &tol) {
    require_square(h, "hermitian_eigendecomposition");
    require_finite(h, "hermitian_eigendecomposition");
    if (!is_hermitian(h, tol)) {
        throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian within tolerance");
    }
    // The solver reads one triangle only; feed it the Hermitian part.
    const ComplexMatrix symmetric = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetric);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

SvdResult singular_value_decomposition(const ComplexMatrix &m) {
    if (m.size() == 0) {
        throw Error(ErrorKind::ShapeMismatch, "singular_value_decomposition requires a nonempty matrix");
    }
    require_finite(m, "singular_value_decomposition");
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) {
        throw Error(ErrorKind::ConvergenceFailure, "SVD did not converge");
    }
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix &q, const Tolerance &tol) {
    const EigenDecomposition eig = hermitian_eigendecomposition(q, tol);
    const double floor = -tol.bound(q);
    RealVector roots(eig.eigenvalues.size());
    for (Eigen::Index j = 0; j < eig.eigenvalues.size(); ++j) {
        const double lambda = eig.eigenvalues[j];
        if (lambda < floor) {
            throw Error(ErrorKind::NotPsd,
                        "eigenvalue " + std::to_string(lambda) + " is below the PSD tolerance");
        }
        roots[j] = std::sqrt(std::max(lambda, 0.0));
    }
    const ComplexMatrix &v = eig.eigenvectors;
    ComplexMatrix root = v * roots.cast<Complex>().asDiagonal() * v.adjoint();
    return (root + root.adjoint()) / 2.0;
}

bool is_hermitian(const ComplexMatrix &a, const Tolerance &tol) {
    require_square(a, "is_hermitian");
    if (!all_finite(a)) {
        return false;
    }
    return max_abs(a - a.adjoint()) <= tol.bound(a);
}

bool is_psd(const ComplexMatrix &a, const Tolerance &tol) {
    const EigenDecomposition eig = hermitian_eigendecomposition(a, tol);
    return eig.eigenvalues[0] >= -tol.bound(a);
}

bool is_projector(const ComplexMatrix &a, const Tolerance &tol) {
    if (!is_hermitian(a, tol)) {
        return false;
    }
    return (a * a - a).norm() <= tol.bound(a);
}

bool is_resolution_of_identity(std::span<const ComplexMatrix> ops, const Tolerance &tol) {
    if (ops.empty()) {
        return false;
    }
    const Eigen::Index dim = ops.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const ComplexMatrix &op : ops) {
        if (op.rows() != dim || op.cols() != dim) {
            throw Error(ErrorKind::ShapeMismatch, "operators in a resolution must share one square shape");
        }
        sum += op;
    }
    const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);
    return all_finite(sum) && max_abs(sum - identity) <= tol.bound(identity);
}

bool is_unitary(const ComplexMatrix &a, const Tolerance &tol) {
    require_square(a, "is_unitary");
    const ComplexMatrix identity = ComplexMatrix::Identity(a.rows(), a.cols());
    return all_finite(a) && max_abs(a.adjoint() * a - identity) <= tol.bound(identity);
}

}  // namespace qmeas
