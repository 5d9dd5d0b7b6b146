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

#include "qmeas/discrimination.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmeas/error.h"

namespace qmeas {

namespace {

constexpr double kParallelThreshold = 1.0 - 1e-12;

}  // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::DefinitelyPsi: return "DefinitelyPsi";
        case Verdict::DefinitelyPhi: return "DefinitelyPhi";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

double max_feasible_parameter(const PureState &psi, const PureState &phi) {
    const double in_span = 1.0 / (1.0 + std::abs(overlap(psi, phi)));
    // Outside span{psi, phi} the inconclusive effect has eigenvalue 1 - 2a.
    return psi.dim() > 2 ? std::min(in_span, 0.5) : in_span;
}

double conclusive_probability(const PureState &psi, const PureState &phi, double a) {
    return a * (1.0 - std::norm(overlap(psi, phi)));
}

DiscriminationPovm build_discrimination_povm(const PureState &psi, const PureState &phi,
                                             std::optional<double> a, const Tolerance &tol) {
    tol.check();
    if (psi.dim() != phi.dim()) {
        throw Error(ErrorKind::ShapeMismatch, "psi and phi live in different dimensions");
    }
    if (psi.dim() < 2) {
        throw Error(ErrorKind::ShapeMismatch, "discrimination needs dimension >= 2");
    }
    const double fidelity = std::abs(overlap(psi, phi));
    if (fidelity >= kParallelThreshold) {
        throw Error(ErrorKind::ParallelStates, "|<psi|phi>| = " + std::to_string(fidelity));
    }
    const double param = a.value_or(max_feasible_parameter(psi, phi));
    if (!std::isfinite(param) || param <= 0.0) {
        throw Error(ErrorKind::InfeasibleParameter, "a must be positive, got " + std::to_string(param));
    }

    const auto n = static_cast<Eigen::Index>(psi.dim());
    const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
    const ComplexMatrix q0 = param * (identity - outer(psi.amplitudes(), psi.amplitudes()));
    const ComplexMatrix q1 = param * (identity - outer(phi.amplitudes(), phi.amplitudes()));
    ComplexMatrix q2 = identity - q0 - q1;
    q2 = (q2 + q2.adjoint()) / 2.0;

    const double min_eig = hermitian_eigendecomposition(q2, tol).eigenvalues[0];
    if (min_eig < -tol.bound(q2)) {
        throw Error(ErrorKind::InfeasibleParameter,
                    "a = " + std::to_string(param) + " makes the inconclusive effect negative (min eigenvalue " +
                        std::to_string(min_eig) + "); the bound is " + std::to_string(max_feasible_parameter(psi, phi)));
    }

    PovmSet povm = validate_povm({{"0", q0}, {"1", q1}, {"2", q2}}, tol);
    return DiscriminationPovm{psi, phi, param, std::move(povm)};
}

OutcomeDistribution discrimination_probabilities(const DiscriminationPovm &d, Candidate which) {
    return povm_probabilities(d.povm, which == Candidate::Psi ? d.psi : d.phi);
}

Verdict classify_outcome(std::string_view label) {
    if (label == "1") {
        return Verdict::DefinitelyPsi;
    }
    if (label == "0") {
        return Verdict::DefinitelyPhi;
    }
    if (label == "2") {
        return Verdict::Inconclusive;
    }
    throw Error(ErrorKind::UnknownLabel, "discrimination outcome '" + std::string(label) + "'");
}

TrialReport discrimination_trial(const DiscriminationPovm &d, Candidate ground_truth, std::uint64_t n,
                                 std::uint64_t seed) {
    TrialReport report;
    report.ground_truth = ground_truth;
    report.trials = n;
    report.expected_conclusive_rate = conclusive_probability(d.psi, d.phi, d.a);

    const OutcomeCounts counts = sample_outcomes(discrimination_probabilities(d, ground_truth), n, seed);
    for (const auto &[label, count] : counts) {
        switch (classify_outcome(label)) {
            case Verdict::DefinitelyPsi:
                report.definitely_psi += count;
                if (ground_truth == Candidate::Phi) {
                    report.wrong_conclusive += count;
                }
                break;
            case Verdict::DefinitelyPhi:
                report.definitely_phi += count;
                if (ground_truth == Candidate::Psi) {
                    report.wrong_conclusive += count;
                }
                break;
            case Verdict::Inconclusive:
                report.inconclusive += count;
                break;
        }
    }
    if (n > 0) {
        const double total = static_cast<double>(n);
        report.conclusive_rate = static_cast<double>(report.definitely_psi + report.definitely_phi) / total;
        report.error_rate = static_cast<double>(report.wrong_conclusive) / total;
    }
    return report;
}

}  // namespace qmeas
