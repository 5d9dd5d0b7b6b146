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

#include "qmeas/measurement.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "qmeas/error.h"

namespace qmeas {

namespace {

constexpr double kZeroProbability = 1e-12;

ComplexMatrix identity_like(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return ComplexMatrix::Identity(n, n);
}

/// Shape, finiteness, and label checks shared by every validator.
std::size_t check_structure(const RawOperatorSet &candidate) {
    if (candidate.empty()) {
        throw Error(ErrorKind::ValidationFailure, "operator set is empty");
    }
    const Eigen::Index dim = candidate.front().op.rows();
    std::set<std::string> seen;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        const ComplexMatrix &op = candidate[i].op;
        if (dim == 0 || op.rows() != dim || op.cols() != dim) {
            throw Error(ErrorKind::ShapeMismatch,
                        "operator " + std::to_string(i) + " is not " + std::to_string(dim) + "x" +
                            std::to_string(dim),
                        i);
        }
        if (!all_finite(op)) {
            throw Error(ErrorKind::NonFinite, "operator " + std::to_string(i) + " has a non-finite entry", i);
        }
        if (!seen.insert(candidate[i].label).second) {
            throw Error(ErrorKind::ValidationFailure, "duplicate outcome label '" + candidate[i].label + "'", i);
        }
    }
    return static_cast<std::size_t>(dim);
}

void check_hermitian_psd(const RawOperatorSet &candidate, const Tolerance &tol) {
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        if (!is_hermitian(candidate[i].op, tol)) {
            throw Error(ErrorKind::NotHermitian, "operator " + std::to_string(i) + " is not Hermitian", i);
        }
    }
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        if (!is_psd(candidate[i].op, tol)) {
            throw Error(ErrorKind::NotPsd, "operator " + std::to_string(i) + " is not positive semi-definite", i);
        }
    }
}

void check_resolution(const std::vector<ComplexMatrix> &ops, const Tolerance &tol, const char *what) {
    if (!is_resolution_of_identity(ops, tol)) {
        throw Error(ErrorKind::IncompleteResolution, std::string(what) + " do not sum to the identity");
    }
}

std::vector<ComplexMatrix> bare(const RawOperatorSet &set) {
    std::vector<ComplexMatrix> out;
    out.reserve(set.size());
    for (const auto &entry : set) {
        out.push_back(entry.op);
    }
    return out;
}

double real_trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    // tr(AB) without forming the product.
    return (a.transpose().cwiseProduct(b)).sum().real();
}

void require_dim(std::size_t expected, std::size_t got) {
    if (expected != got) {
        throw Error(ErrorKind::ShapeMismatch, "measurement on dimension " + std::to_string(expected) +
                                                  " applied to a state of dimension " + std::to_string(got));
    }
}

DensityMatrix normalized_density(const ComplexMatrix &numerator) {
    const double trace = numerator.trace().real();
    ComplexMatrix m = numerator / trace;
    return DensityMatrix((m + m.adjoint()) / 2.0);
}

}  // namespace

RawOperatorSet label_operators(std::vector<ComplexMatrix> ops) {
    RawOperatorSet out;
    out.reserve(ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
        out.push_back({std::to_string(i), std::move(ops[i])});
    }
    return out;
}

OperatorSet::OperatorSet(RawOperatorSet outcomes)
    : dim_(static_cast<std::size_t>(outcomes.front().op.rows())), outcomes_(std::move(outcomes)) {
}

std::vector<ComplexMatrix> OperatorSet::operators() const {
    return bare(outcomes_);
}

std::vector<std::string> OperatorSet::labels() const {
    std::vector<std::string> out;
    out.reserve(outcomes_.size());
    for (const auto &entry : outcomes_) {
        out.push_back(entry.label);
    }
    return out;
}

std::size_t OperatorSet::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        if (outcomes_[i].label == label) {
            return i;
        }
    }
    throw Error(ErrorKind::UnknownLabel, "no outcome labeled '" + std::string(label) + "'");
}

OutcomeDistribution::OutcomeDistribution(std::vector<std::string> labels, std::vector<double> probabilities)
    : labels_(std::move(labels)), probabilities_(std::move(probabilities)) {
}

OutcomeDistribution OutcomeDistribution::from_raw(std::vector<std::string> labels, std::vector<double> raw) {
    if (labels.size() != raw.size()) {
        throw Error(ErrorKind::ShapeMismatch, "label and probability counts differ");
    }
    bool clamped = false;
    for (double &p : raw) {
        if (!std::isfinite(p)) {
            throw Error(ErrorKind::NonFinite, "non-finite probability");
        }
        if (p < 0.0) {
            p = 0.0;
            clamped = true;
        } else if (p > 1.0) {
            p = 1.0;
        }
    }
    if (clamped) {
        const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
        if (sum > 0.0) {
            for (double &p : raw) {
                p /= sum;
            }
        }
    }
    return OutcomeDistribution(std::move(labels), std::move(raw));
}

double OutcomeDistribution::probability(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) {
            return probabilities_[i];
        }
    }
    throw Error(ErrorKind::UnknownLabel, "no outcome labeled '" + std::string(label) + "'");
}

double OutcomeDistribution::total() const {
    return std::accumulate(probabilities_.begin(), probabilities_.end(), 0.0);
}

PvmSet validate_pvm(RawOperatorSet candidate, const Tolerance &tol) {
    tol.check();
    const std::size_t dim = check_structure(candidate);
    check_hermitian_psd(candidate, tol);
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        if (!is_projector(candidate[i].op, tol)) {
            throw Error(ErrorKind::NotIdempotent, "operator " + std::to_string(i) + " is not idempotent", i);
        }
    }
    const double orth_bound = tol.bound(identity_like(dim));
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        for (std::size_t j = i + 1; j < candidate.size(); ++j) {
            if (max_abs(candidate[i].op * candidate[j].op) > orth_bound) {
                throw Error(ErrorKind::NotOrthogonal,
                            "operators " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal",
                            i, j);
            }
        }
    }
    check_resolution(bare(candidate), tol, "projectors");
    return PvmSet(std::move(candidate));
}

PovmSet validate_povm(RawOperatorSet candidate, const Tolerance &tol) {
    tol.check();
    check_structure(candidate);
    check_hermitian_psd(candidate, tol);
    check_resolution(bare(candidate), tol, "effects");
    return PovmSet(std::move(candidate));
}

KrausSet validate_kraus(RawOperatorSet candidate, const Tolerance &tol) {
    tol.check();
    check_structure(candidate);
    std::vector<ComplexMatrix> effects;
    effects.reserve(candidate.size());
    for (const auto &entry : candidate) {
        effects.push_back(entry.op.adjoint() * entry.op);
    }
    check_resolution(effects, tol, "Kraus effects A^dagger A");
    return KrausSet(std::move(candidate));
}

PovmSet as_povm(const PvmSet &pvm, const Tolerance &tol) {
    return validate_povm(pvm.outcomes(), tol);
}

PovmSet povm_from_kraus(const KrausSet &kraus, const Tolerance &tol) {
    RawOperatorSet effects;
    effects.reserve(kraus.size());
    for (const auto &entry : kraus.outcomes()) {
        ComplexMatrix e = entry.op.adjoint() * entry.op;
        effects.push_back({entry.label, (e + e.adjoint()) / 2.0});
    }
    return validate_povm(std::move(effects), tol);
}

OutcomeDistribution pvm_probabilities(const PvmSet &pvm, const PureState &psi) {
    require_dim(pvm.dim(), psi.dim());
    const ComplexVector &a = psi.amplitudes();
    std::vector<double> raw;
    raw.reserve(pvm.size());
    for (const auto &entry : pvm.outcomes()) {
        raw.push_back(a.dot(entry.op * a).real());
    }
    return OutcomeDistribution::from_raw(pvm.labels(), std::move(raw));
}

OutcomeDistribution pvm_probabilities_mixed(const PvmSet &pvm, const DensityMatrix &rho) {
    require_dim(pvm.dim(), rho.dim());
    std::vector<double> raw;
    raw.reserve(pvm.size());
    for (const auto &entry : pvm.outcomes()) {
        raw.push_back(real_trace_product(entry.op, rho.matrix()));
    }
    return OutcomeDistribution::from_raw(pvm.labels(), std::move(raw));
}

PureState pvm_post_state(const PvmSet &pvm, std::string_view label, const PureState &psi) {
    require_dim(pvm.dim(), psi.dim());
    const ComplexMatrix &p = pvm.op(pvm.index_of(label));
    const ComplexVector projected = p * psi.amplitudes();
    const double prob = psi.amplitudes().dot(projected).real();
    if (prob <= kZeroProbability) {
        throw Error(ErrorKind::ZeroProbabilityOutcome, "outcome '" + std::string(label) + "' has zero probability");
    }
    // Dividing by the realized norm rather than sqrt(prob) absorbs the
    // tolerance-level non-idempotency of P.
    return PureState::normalized(projected);
}

DensityMatrix pvm_post_state_mixed(const PvmSet &pvm, std::string_view label, const DensityMatrix &rho) {
    require_dim(pvm.dim(), rho.dim());
    const ComplexMatrix &p = pvm.op(pvm.index_of(label));
    if (real_trace_product(p, rho.matrix()) <= kZeroProbability) {
        throw Error(ErrorKind::ZeroProbabilityOutcome, "outcome '" + std::string(label) + "' has zero probability");
    }
    return normalized_density(p * rho.matrix() * p);
}

OutcomeDistribution povm_probabilities(const PovmSet &povm, const DensityMatrix &rho) {
    require_dim(povm.dim(), rho.dim());
    std::vector<double> raw;
    raw.reserve(povm.size());
    for (const auto &entry : povm.outcomes()) {
        raw.push_back(real_trace_product(entry.op, rho.matrix()));
    }
    return OutcomeDistribution::from_raw(povm.labels(), std::move(raw));
}

OutcomeDistribution povm_probabilities(const PovmSet &povm, const PureState &psi) {
    return povm_probabilities(povm, density_from_pure(psi));
}

OutcomeDistribution kraus_probabilities(const KrausSet &kraus, const DensityMatrix &rho) {
    require_dim(kraus.dim(), rho.dim());
    std::vector<double> raw;
    raw.reserve(kraus.size());
    for (const auto &entry : kraus.outcomes()) {
        raw.push_back(real_trace_product(entry.op.adjoint() * entry.op, rho.matrix()));
    }
    return OutcomeDistribution::from_raw(kraus.labels(), std::move(raw));
}

KrausSet kraus_from_povm(const PovmSet &povm, const Tolerance &tol, std::span<const ComplexMatrix> unitaries) {
    if (!unitaries.empty() && unitaries.size() != povm.size()) {
        throw Error(ErrorKind::ShapeMismatch, "need exactly one unitary per outcome");
    }
    RawOperatorSet roots;
    roots.reserve(povm.size());
    for (std::size_t i = 0; i < povm.size(); ++i) {
        ComplexMatrix a = psd_sqrt(povm.op(i), tol);
        if (!unitaries.empty()) {
            const ComplexMatrix &u = unitaries[i];
            if (u.rows() != a.rows() || !is_unitary(u, tol)) {
                throw Error(ErrorKind::NotUnitary, "post-multiplier " + std::to_string(i) + " is not unitary", i);
            }
            a = u * a;
        }
        roots.push_back({povm.label(i), std::move(a)});
    }
    return validate_kraus(std::move(roots), tol);
}

DensityMatrix povm_post_state(const KrausSet &kraus, std::string_view label, const DensityMatrix &rho) {
    require_dim(kraus.dim(), rho.dim());
    const ComplexMatrix &a = kraus.op(kraus.index_of(label));
    if (real_trace_product(a.adjoint() * a, rho.matrix()) <= kZeroProbability) {
        throw Error(ErrorKind::ZeroProbabilityOutcome, "outcome '" + std::string(label) + "' has zero probability");
    }
    return normalized_density(a * rho.matrix() * a.adjoint());
}

OutcomeCounts sample_outcomes(const OutcomeDistribution &dist, std::uint64_t n, std::uint64_t seed) {
    const auto &probs = dist.probabilities();
    std::vector<double> cumulative(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cumulative.begin());

    // Fallback for draws landing past the rounded total.
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0) {
            last_positive = i;
        }
    }

    std::vector<std::uint64_t> counts(probs.size(), 0);
    std::mt19937_64 rng(seed);
    const double total = cumulative.empty() ? 0.0 : cumulative.back();
    for (std::uint64_t draw = 0; draw < n && !probs.empty(); ++draw) {
        // 53 random mantissa bits: uniform on [0, 1), independent of the
        // standard library's distribution implementations.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t index = it == cumulative.end() ? last_positive
                                                   : static_cast<std::size_t>(it - cumulative.begin());
        ++counts[index];
    }

    OutcomeCounts out;
    out.reserve(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        out.emplace_back(dist.labels()[i], counts[i]);
    }
    return out;
}

}  // namespace qmeas
