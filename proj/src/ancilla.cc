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

#include "qmeas/ancilla.h"

#include <cmath>
#include <string>

#include "qmeas/error.h"

namespace qmeas {

namespace {

/// Unitarity promised by realize_povm_with_ancilla.
constexpr double kUnitarityBound = 1e-10;
constexpr double kRoundTripBound = 1e-9;

/// W: columns e_j (x) ready, shape kN x k.
ComplexMatrix ready_embedding(std::size_t k, const PureState &ready) {
    const auto n = static_cast<Eigen::Index>(ready.dim());
    ComplexMatrix w = ComplexMatrix::Zero(static_cast<Eigen::Index>(k) * n, static_cast<Eigen::Index>(k));
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(k); ++j) {
        w.col(j).segment(j * n, n) = ready.amplitudes();
    }
    return w;
}

/// V (V^dagger V)^{-1/2}: the nearest exact isometry to V.
ComplexMatrix polar_isometry(const ComplexMatrix &v) {
    const ComplexMatrix gram = v.adjoint() * v;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((gram + gram.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::ConvergenceFailure, "eigensolver failed on the isometry Gram matrix");
    }
    if (!(solver.eigenvalues().minCoeff() > 0.0)) {
        throw Error(ErrorKind::CompletionFailure, "Kraus isometry is rank deficient");
    }
    const RealVector inv_root = solver.eigenvalues().cwiseSqrt().cwiseInverse();
    const ComplexMatrix &q = solver.eigenvectors();
    return v * (q * inv_root.cast<Complex>().asDiagonal() * q.adjoint());
}

}  // namespace

AncillaModel::AncillaModel(ComplexMatrix unitary, PureState ready_state, PvmSet local_pvm, const Tolerance &tol)
    : system_dim_(0), unitary_(std::move(unitary)), ready_state_(std::move(ready_state)), local_pvm_(std::move(local_pvm)) {
    const auto n = static_cast<Eigen::Index>(local_pvm_.dim());
    if (unitary_.rows() != unitary_.cols() || unitary_.rows() == 0 || unitary_.rows() % n != 0) {
        throw Error(ErrorKind::ShapeMismatch, "unitary is " + std::to_string(unitary_.rows()) + "x" +
                                                  std::to_string(unitary_.cols()) +
                                                  ", not a square multiple of the ancilla dimension " +
                                                  std::to_string(n));
    }
    if (ready_state_.dim() != local_pvm_.dim()) {
        throw Error(ErrorKind::ShapeMismatch, "ready state and local PVM have different dimensions");
    }
    if (!is_unitary(unitary_, tol)) {
        throw Error(ErrorKind::NotUnitary, "combined-system operator is not unitary");
    }
    system_dim_ = static_cast<std::size_t>(unitary_.rows() / n);
}

AncillaModel realize_povm_with_ancilla(const KrausSet &kraus, const Tolerance &tol) {
    const auto k = static_cast<Eigen::Index>(kraus.dim());
    const auto n = static_cast<Eigen::Index>(kraus.size());
    const Eigen::Index total = k * n;

    ComplexMatrix isometry(total, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        const ComplexMatrix &a = kraus.op(static_cast<std::size_t>(i));
        for (Eigen::Index j = 0; j < k; ++j) {
            isometry.row(j * n + i) = a.row(j);
        }
    }
    isometry = polar_isometry(isometry);

    ComplexMatrix unitary = ComplexMatrix::Zero(total, total);
    std::vector<bool> filled(static_cast<std::size_t>(total), false);
    for (Eigen::Index j = 0; j < k; ++j) {
        unitary.col(j * n) = isometry.col(j);
        filled[static_cast<std::size_t>(j * n)] = true;
    }

    // Remaining columns: repeatedly take the standard basis vector with the
    // largest component outside the current span (lowest index on ties).
    ComplexMatrix basis = isometry;
    for (Eigen::Index slot = 0; slot < total; ++slot) {
        if (filled[static_cast<std::size_t>(slot)]) {
            continue;
        }
        ComplexVector best;
        double best_norm = -1.0;
        for (Eigen::Index c = 0; c < total; ++c) {
            ComplexVector v = ComplexVector::Unit(total, c);
            for (int pass = 0; pass < 2; ++pass) {
                v -= basis * (basis.adjoint() * v);
            }
            const double norm = v.norm();
            if (norm > best_norm) {
                best_norm = norm;
                best = std::move(v);
            }
        }
        if (!(best_norm > 1e-8)) {
            throw Error(ErrorKind::CompletionFailure, "orthonormal completion degenerated at column " +
                                                          std::to_string(slot));
        }
        best /= best_norm;
        unitary.col(slot) = best;
        basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
        basis.col(basis.cols() - 1) = best;
        filled[static_cast<std::size_t>(slot)] = true;
    }

    const double unitarity = max_abs(unitary.adjoint() * unitary - ComplexMatrix::Identity(total, total));
    if (!(unitarity <= kUnitarityBound)) {
        throw Error(ErrorKind::CompletionFailure, "completed operator deviates from unitarity by " +
                                                      std::to_string(unitarity));
    }

    RawOperatorSet local;
    for (Eigen::Index i = 0; i < n; ++i) {
        ComplexMatrix p = ComplexMatrix::Zero(n, n);
        p(i, i) = 1.0;
        local.push_back({kraus.label(static_cast<std::size_t>(i)), std::move(p)});
    }
    AncillaModel model(std::move(unitary), PureState::basis(static_cast<std::size_t>(n), 0),
                       validate_pvm(std::move(local), tol), tol);

    const PovmSet induced = induced_povm(model, tol);
    double worst = 0.0;
    for (std::size_t i = 0; i < kraus.size(); ++i) {
        const ComplexMatrix effect = kraus.op(i).adjoint() * kraus.op(i);
        worst = std::max(worst, max_abs(induced.op(i) - effect));
    }
    if (!(worst <= kRoundTripBound)) {
        throw Error(ErrorKind::ValidationFailure,
                    "induced POVM differs from the Kraus effects by " + std::to_string(worst));
    }
    return model;
}

std::vector<CombinedOperator> combined_operators(const AncillaModel &m) {
    const auto k = static_cast<Eigen::Index>(m.system_dim());
    const ComplexMatrix identity = ComplexMatrix::Identity(k, k);
    const ComplexMatrix &a = m.unitary();
    std::vector<CombinedOperator> out;
    out.reserve(m.local_pvm().size());
    for (const auto &entry : m.local_pvm().outcomes()) {
        ComplexMatrix o = a.adjoint() * tensor_product_op(identity, entry.op) * a;
        out.push_back({entry.label, (o + o.adjoint()) / 2.0});
    }
    return out;
}

PovmSet induced_povm(const AncillaModel &m, const Tolerance &tol) {
    const ComplexMatrix w = ready_embedding(m.system_dim(), m.ready_state());
    RawOperatorSet effects;
    for (auto &o : combined_operators(m)) {
        ComplexMatrix q = w.adjoint() * o.matrix * w;
        effects.push_back({std::move(o.label), (q + q.adjoint()) / 2.0});
    }
    try {
        return validate_povm(std::move(effects), tol);
    } catch (const Error &e) {
        throw Error(ErrorKind::ValidationFailure, std::string("induced POVM is invalid: ") + e.what());
    }
}

OutcomeDistribution ancilla_probabilities(const AncillaModel &m, const PureState &psi) {
    if (psi.dim() != m.system_dim()) {
        throw Error(ErrorKind::ShapeMismatch, "state dimension " + std::to_string(psi.dim()) +
                                                  " does not match system dimension " +
                                                  std::to_string(m.system_dim()));
    }
    const auto k = static_cast<Eigen::Index>(m.system_dim());
    const ComplexMatrix identity = ComplexMatrix::Identity(k, k);
    const ComplexVector evolved = m.unitary() * tensor_product_state(psi, m.ready_state()).amplitudes();
    std::vector<double> raw;
    raw.reserve(m.local_pvm().size());
    for (const auto &entry : m.local_pvm().outcomes()) {
        raw.push_back(evolved.dot(tensor_product_op(identity, entry.op) * evolved).real());
    }
    return OutcomeDistribution::from_raw(m.local_pvm().labels(), std::move(raw));
}

}  // namespace qmeas
