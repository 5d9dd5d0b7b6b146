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

#include "qmeas/states.h"

#include <cmath>
#include <string>
#include <utility>

#include "qmeas/error.h"

namespace qmeas {

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw Error(ErrorKind::ShapeMismatch, "a pure state needs at least one amplitude");
    }
    if (!amplitudes_.allFinite()) {
        throw Error(ErrorKind::NonFinite, "state amplitudes must be finite");
    }
    const double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::NotNormalized,
                    "squared norm is " + std::to_string(norm2) + ", expected 1");
    }
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw Error(ErrorKind::ShapeMismatch, "basis index out of range");
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(std::move(v));
}

PureState PureState::normalized(const ComplexVector &v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorKind::NotNormalized, "cannot normalize a zero or non-finite vector");
    }
    return PureState(v / n);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, const Tolerance &tol) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw Error(ErrorKind::ShapeMismatch, "density matrix must be square and nonempty");
    }
    if (!is_hermitian(matrix_, tol)) {
        throw Error(ErrorKind::NotHermitian, "density matrix is not Hermitian");
    }
    if (!is_psd(matrix_, tol)) {
        throw Error(ErrorKind::NotPsd, "density matrix is not positive semi-definite");
    }
    const Complex trace = matrix_.trace();
    if (std::abs(trace - Complex(1.0, 0.0)) > kTraceTolerance) {
        throw Error(ErrorKind::NotNormalized,
                    "density matrix trace is " + std::to_string(trace.real()) + ", expected 1");
    }
}

DensityMatrix density_from_pure(const PureState &psi) {
    const ComplexVector &a = psi.amplitudes();
    return DensityMatrix(a * a.adjoint());
}

Complex overlap(const PureState &psi, const PureState &phi) {
    if (psi.dim() != phi.dim()) {
        throw Error(ErrorKind::ShapeMismatch, "overlap of states with different dimensions");
    }
    return psi.amplitudes().dot(phi.amplitudes());
}

PureState tensor_product_state(const PureState &a, const PureState &b) {
    const Eigen::Index nb = b.amplitudes().size();
    ComplexVector out(a.amplitudes().size() * nb);
    for (Eigen::Index j = 0; j < a.amplitudes().size(); ++j) {
        out.segment(j * nb, nb) = a.amplitudes()[j] * b.amplitudes();
    }
    return PureState(std::move(out));
}

ComplexMatrix tensor_product_op(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != a.cols() || b.rows() != b.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "tensor_product_op expects square operators");
    }
    const Eigen::Index rb = b.rows();
    const Eigen::Index cb = b.cols();
    ComplexMatrix out(a.rows() * rb, a.cols() * cb);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

PureState random_pure_state(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v[i] = Complex(re, im);
    }
    return PureState::normalized(v);
}

}  // namespace qmeas
