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

#include "qmeas/neumark.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qmeas {

namespace {

constexpr double kRankCut = 1e-12;

std::string format_residual(double r) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << r;
    return out.str();
}

ComplexVector pad(const ComplexVector &v, Eigen::Index rows) {
    ComplexVector out = ComplexVector::Zero(rows);
    out.head(v.size()) = v;
    return out;
}

DilationResiduals compute_residuals(const ComplexMatrix &m, const ComplexMatrix &ext, const ComplexMatrix &pu,
                                    const std::vector<ComplexMatrix> &projectors) {
    const Eigen::Index fine = ext.cols();
    DilationResiduals r;
    r.subspace_projector = max_abs(m * m.adjoint() - pu);
    r.orthonormality = max_abs(ext.adjoint() * ext - ComplexMatrix::Identity(fine, fine));
    r.projection = max_abs(pu * ext - m);
    for (std::size_t j = 0; j < projectors.size() && static_cast<Eigen::Index>(j) < m.cols(); ++j) {
        const ComplexVector mu = m.col(static_cast<Eigen::Index>(j));
        r.fine_effect = std::max(r.fine_effect, max_abs(mu * mu.adjoint() - pu * projectors[j] * pu));
    }
    return r;
}

}  // namespace

DilationError::DilationError(std::string identity, double residual)
    : Error(ErrorKind::DilationVerificationFailure,
            identity + " residual " + format_residual(residual) + " exceeds " + format_residual(kDilationTolerance)),
      identity_(std::move(identity)),
      residual_(residual) {
}

RankOneRefinement refine_to_rank_one(const PovmSet &povm, const Tolerance &tol) {
    RankOneRefinement r;
    r.original_dim = povm.dim();
    r.coarse_labels = povm.labels();
    for (std::size_t i = 0; i < povm.size(); ++i) {
        const ComplexMatrix &q = povm.op(i);
        const EigenDecomposition eig = hermitian_eigendecomposition(q, tol);
        const Eigen::Index n = eig.eigenvalues.size();
        const double spectral = std::max(std::abs(eig.eigenvalues[0]), std::abs(eig.eigenvalues[n - 1]));
        const double cut = kRankCut * spectral;

        ComplexMatrix rebuilt = ComplexMatrix::Zero(q.rows(), q.cols());
        std::size_t rank = 0;
        // Ascending storage; walk backwards for descending order within the group.
        for (Eigen::Index j = n - 1; j >= 0; --j) {
            const double lambda = eig.eigenvalues[j];
            if (!(lambda > cut) || lambda <= 0.0) {
                break;
            }
            ComplexVector mu = std::sqrt(lambda) * eig.eigenvectors.col(j);
            rebuilt += mu * mu.adjoint();
            r.vectors.push_back(std::move(mu));
            r.parent.push_back(i);
            r.fine_labels.push_back(povm.label(i) + "." + std::to_string(rank));
            ++rank;
        }
        if (max_abs(rebuilt - q) > tol.bound(q)) {
            throw Error(ErrorKind::ValidationFailure,
                        "rank-one pieces of effect " + std::to_string(i) + " do not reconstruct it", i);
        }
    }
    return r;
}

MeasurementMatrix measurement_matrix(const RankOneRefinement &r) {
    const auto fine = static_cast<Eigen::Index>(r.fine_count());
    const auto rows = std::max(static_cast<Eigen::Index>(r.original_dim), fine);
    MeasurementMatrix m;
    m.original_dim = r.original_dim;
    m.matrix = ComplexMatrix::Zero(rows, fine);
    for (Eigen::Index j = 0; j < fine; ++j) {
        m.matrix.col(j).head(r.vectors[static_cast<std::size_t>(j)].size()) = r.vectors[static_cast<std::size_t>(j)];
    }
    return m;
}

ComplexMatrix subspace_projector(std::size_t original_dim, std::size_t enlarged_dim) {
    const auto n = static_cast<Eigen::Index>(enlarged_dim);
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    p.topLeftCorner(static_cast<Eigen::Index>(original_dim), static_cast<Eigen::Index>(original_dim)).setIdentity();
    return p;
}

NeumarkDilation dilate(const RankOneRefinement &r, const Tolerance &tol) {
    if (r.fine_count() == 0) {
        throw Error(ErrorKind::ValidationFailure, "refinement has no measurement vectors");
    }
    const MeasurementMatrix mm = measurement_matrix(r);
    const ComplexMatrix &m = mm.matrix;
    const Eigen::Index rows = m.rows();
    const Eigen::Index fine = m.cols();

    // M = U S V^dagger. Padding guarantees rows >= fine, so the first `fine`
    // left-singular vectors exist; M~ = sum_i u_i v_i^dagger over all of them.
    const SvdResult svd = singular_value_decomposition(m);
    const ComplexMatrix extended = svd.left.leftCols(fine) * svd.right.adjoint();

    const ComplexMatrix pu = subspace_projector(r.original_dim, static_cast<std::size_t>(rows));
    std::vector<ComplexMatrix> projectors;
    projectors.reserve(r.fine_count());
    for (Eigen::Index j = 0; j < fine; ++j) {
        projectors.push_back(outer(extended.col(j), extended.col(j)));
    }

    const DilationResiduals res = compute_residuals(m, extended, pu, projectors);
    const std::pair<const char *, double> checks[] = {
        {"M M^dagger = P_U", res.subspace_projector},
        {"M~^dagger M~ = I", res.orthonormality},
        {"P_U M~ = M", res.projection},
        {"Q_j = P_U P_j P_U", res.fine_effect},
    };
    const auto *worst = std::max_element(std::begin(checks), std::end(checks),
                                         [](const auto &a, const auto &b) { return a.second < b.second; });
    if (!(worst->second <= kDilationTolerance)) {
        throw DilationError(worst->first, worst->second);
    }

    RawOperatorSet labelled;
    labelled.reserve(projectors.size());
    for (std::size_t j = 0; j < projectors.size(); ++j) {
        labelled.push_back({r.fine_labels[j], std::move(projectors[j])});
    }
    PvmSet pvm = [&] {
        try {
            return validate_pvm(std::move(labelled), tol);
        } catch (const Error &e) {
            throw DilationError(std::string("emitted PVM (") + e.what() + ")", std::nan(""));
        }
    }();

    NeumarkDilation d{
        r.original_dim, static_cast<std::size_t>(rows), m, extended, pu, std::move(pvm), r.parent, r.coarse_labels,
    };
    return d;
}

DilationResiduals dilation_residuals(const NeumarkDilation &d) {
    return compute_residuals(d.measurement_matrix, d.extended_matrix, d.subspace_projector, d.pvm.operators());
}

DilatedDistribution dilated_probabilities(const NeumarkDilation &d, const PureState &psi) {
    if (psi.dim() != d.original_dim) {
        throw Error(ErrorKind::ShapeMismatch, "state dimension " + std::to_string(psi.dim()) +
                                                  " does not match the dilated POVM's dimension " +
                                                  std::to_string(d.original_dim));
    }
    const PureState embedded(pad(psi.amplitudes(), static_cast<Eigen::Index>(d.enlarged_dim)));
    OutcomeDistribution fine = pvm_probabilities(d.pvm, embedded);
    std::vector<double> coarse(d.coarse_labels.size(), 0.0);
    for (std::size_t j = 0; j < fine.size(); ++j) {
        coarse[d.parent[j]] += fine.probabilities()[j];
    }
    return {std::move(fine), OutcomeDistribution::from_raw(d.coarse_labels, std::move(coarse))};
}

DilationReport verify_dilation(const NeumarkDilation &d, const PovmSet &original, std::uint64_t trials,
                               std::uint64_t seed) {
    DilationReport report;
    report.trials = trials;
    report.residuals = dilation_residuals(d);

    const auto flag = [&](const char *name, double residual) {
        if (!(residual <= kDilationTolerance)) {
            report.failures.push_back(std::string(name) + " residual " + format_residual(residual));
        }
    };
    flag("M M^dagger = P_U", report.residuals.subspace_projector);
    flag("M~^dagger M~ = I", report.residuals.orthonormality);
    flag("P_U M~ = M", report.residuals.projection);
    flag("Q_j = P_U P_j P_U", report.residuals.fine_effect);

    const bool comparable = original.dim() == d.original_dim && original.size() == d.coarse_labels.size() &&
                            d.parent.size() == d.pvm.size();
    if (!comparable) {
        report.failures.push_back("dilation and original POVM have incompatible shapes");
        return report;
    }

    const auto k = static_cast<Eigen::Index>(d.original_dim);
    std::vector<ComplexMatrix> coarse(original.size(), ComplexMatrix::Zero(k, k));
    for (std::size_t j = 0; j < d.pvm.size(); ++j) {
        const ComplexMatrix compressed = d.subspace_projector * d.pvm.op(j) * d.subspace_projector;
        coarse[d.parent[j]] += compressed.topLeftCorner(k, k);
    }
    for (std::size_t i = 0; i < original.size(); ++i) {
        report.coarse_effect = std::max(report.coarse_effect, max_abs(coarse[i] - original.op(i)));
    }
    flag("Q_i = sum_j P_U P_j P_U", report.coarse_effect);

    if (trials > 0) {
        std::mt19937_64 rng(seed);
        double worst = 0.0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            const PureState psi = random_pure_state(d.original_dim, rng);
            const DilatedDistribution dilated = dilated_probabilities(d, psi);
            const OutcomeDistribution direct = povm_probabilities(original, psi);
            for (std::size_t i = 0; i < direct.size(); ++i) {
                worst = std::max(worst, std::abs(dilated.coarse.probabilities()[i] - direct.probabilities()[i]));
            }
        }
        report.probability_discrepancy = worst;
        flag("coarse probabilities", worst);
    }
    return report;
}

}  // namespace qmeas
