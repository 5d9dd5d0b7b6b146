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

// Random generators and reference computations shared by the unit and
// acceptance suites. Oracles here deliberately avoid the library's own
// decomposition routines so they stay independent of what they check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qmeas/linalg.h"
#include "qmeas/measurement.h"
#include "qmeas/states.h"

namespace qmeas::testing {

inline Complex gaussian_complex(std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

inline ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = gaussian_complex(rng);
        }
    }
    return m;
}

inline std::size_t uniform_size(std::size_t lo, std::size_t hi, std::mt19937_64 &rng) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline ComplexMatrix random_hermitian(Eigen::Index dim, std::mt19937_64 &rng) {
    const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
    return (g + g.adjoint()) / 2.0;
}

/// G^dagger G with G of shape rank x dim.
inline ComplexMatrix random_psd(Eigen::Index dim, Eigen::Index rank, std::mt19937_64 &rng) {
    const ComplexMatrix g = gaussian_matrix(rank, dim, rng);
    return g.adjoint() * g;
}

/// Haar-ish unitary from the QR factor of a Gaussian matrix.
inline ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64 &rng) {
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(dim, dim, rng));
    return qr.householderQ() * ComplexMatrix::Identity(dim, dim);
}

/// Random PSD operators G_i (random ranks) normalized against their sum:
/// Q_i = S^{-1/2} G_i S^{-1/2}.
inline std::vector<ComplexMatrix> random_povm_effects(Eigen::Index dim, std::size_t outcomes, std::mt19937_64 &rng) {
    std::vector<ComplexMatrix> g;
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < outcomes; ++i) {
        // The first effect is full rank so the sum is invertible.
        const auto rank =
            i == 0 ? dim : static_cast<Eigen::Index>(uniform_size(1, static_cast<std::size_t>(dim), rng));
        g.push_back(random_psd(dim, rank, rng));
        sum += g.back();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sum);
    const ComplexMatrix inv_root = solver.operatorInverseSqrt();
    for (auto &q : g) {
        q = inv_root * q * inv_root;
        q = (q + q.adjoint()) / 2.0;
    }
    return g;
}

inline PovmSet random_povm(Eigen::Index dim, std::size_t outcomes, std::mt19937_64 &rng) {
    return validate_povm(label_operators(random_povm_effects(dim, outcomes, rng)));
}

/// Columns of a random unitary split into `groups` nonempty blocks; each block
/// spans one projector.
inline std::vector<ComplexMatrix> random_pvm_projectors(Eigen::Index dim, std::size_t groups, std::mt19937_64 &rng) {
    const ComplexMatrix u = random_unitary(dim, rng);
    std::vector<ComplexMatrix> out(groups, ComplexMatrix::Zero(dim, dim));
    for (Eigen::Index c = 0; c < dim; ++c) {
        const std::size_t group = c < static_cast<Eigen::Index>(groups)
                                      ? static_cast<std::size_t>(c)
                                      : uniform_size(0, groups - 1, rng);
        out[group] += u.col(c) * u.col(c).adjoint();
    }
    return out;
}

inline PureState random_state(std::size_t dim, std::mt19937_64 &rng) {
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = gaussian_complex(rng);
    }
    return PureState(v / v.norm());
}

/// Trine effects (2/3)|mu_i><mu_i| with mu_i = (cos t_i, sin t_i), t_i = 2 pi i / 3.
inline std::vector<ComplexMatrix> trine_effects() {
    std::vector<ComplexMatrix> out;
    for (int i = 0; i < 3; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 3.0;
        ComplexVector mu(2);
        mu << std::cos(t), std::sin(t);
        out.push_back((2.0 / 3.0) * mu * mu.adjoint());
    }
    return out;
}

inline PovmSet trine_povm() {
    return validate_povm(label_operators(trine_effects()));
}

/// (2/3) cos^2(t_i): the trine's Born-rule probabilities on |0>.
inline std::vector<double> trine_probabilities_on_zero() {
    std::vector<double> out;
    for (int i = 0; i < 3; ++i) {
        const double c = std::cos(2.0 * std::numbers::pi * i / 3.0);
        out.push_back((2.0 / 3.0) * c * c);
    }
    return out;
}

/// Roots of the characteristic polynomial of a 2x2 Hermitian matrix.
inline std::pair<double, double> eigenvalues_2x2(const ComplexMatrix &h) {
    const double tr = (h(0, 0) + h(1, 1)).real();
    const double det = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)).real();
    const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
    return {tr / 2.0 - disc, tr / 2.0 + disc};
}

/// <psi| A |psi> by explicit summation.
inline Complex expectation(const ComplexMatrix &a, const ComplexVector &psi) {
    Complex acc = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            acc += std::conj(psi[i]) * a(i, j) * psi[j];
        }
    }
    return acc;
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline ComplexMatrix ket_bra(std::initializer_list<Complex> amplitudes) {
    ComplexVector v(static_cast<Eigen::Index>(amplitudes.size()));
    Eigen::Index i = 0;
    for (Complex z : amplitudes) {
        v[i++] = z;
    }
    return v * v.adjoint();
}

inline ComplexVector ket(std::initializer_list<Complex> amplitudes) {
    ComplexVector v(static_cast<Eigen::Index>(amplitudes.size()));
    Eigen::Index i = 0;
    for (Complex z : amplitudes) {
        v[i++] = z;
    }
    return v;
}

inline ComplexMatrix identity(Eigen::Index dim) {
    return ComplexMatrix::Identity(dim, dim);
}

}  // namespace qmeas::testing
