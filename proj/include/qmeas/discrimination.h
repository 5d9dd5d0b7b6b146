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

#include <cstdint>
#include <optional>
#include <string_view>

#include "qmeas/measurement.h"
#include "qmeas/states.h"

namespace qmeas {

enum class Candidate { Psi, Phi };

enum class Verdict { DefinitelyPsi, DefinitelyPhi, Inconclusive };

std::string_view verdict_name(Verdict v);

/// Three-outcome unambiguous discrimination measurement for a pair of
/// nonparallel pure states:
///   Q0 = a (I - |psi><psi|)   fires only for phi
///   Q1 = a (I - |phi><phi|)   fires only for psi
///   Q2 = I - Q0 - Q1          inconclusive
struct DiscriminationPovm {
    PureState psi;
    PureState phi;
    double a;
    PovmSet povm;
};

/// Largest a keeping Q2 PSD: 1 / (1 + |<psi|phi>|) in dimension 2, and
/// min(that, 1/2) above, where Q2 has eigenvalue 1 - 2a off span{psi, phi}.
double max_feasible_parameter(const PureState &psi, const PureState &phi);

/// Closed-form conclusive probability a (1 - |<psi|phi>|^2). Identical for
/// either candidate.
double conclusive_probability(const PureState &psi, const PureState &phi, double a);

/// When `a` is omitted the maximal feasible value is used (Q2 then has a zero
/// eigenvalue). Feasibility is decided by the smallest eigenvalue of Q2.
DiscriminationPovm build_discrimination_povm(const PureState &psi, const PureState &phi,
                                             std::optional<double> a = std::nullopt,
                                             const Tolerance &tol = {});

OutcomeDistribution discrimination_probabilities(const DiscriminationPovm &d, Candidate which);

/// "1" -> DefinitelyPsi, "0" -> DefinitelyPhi, "2" -> Inconclusive.
Verdict classify_outcome(std::string_view label);

struct TrialReport {
    Candidate ground_truth;
    std::uint64_t trials = 0;
    std::uint64_t definitely_psi = 0;
    std::uint64_t definitely_phi = 0;
    std::uint64_t inconclusive = 0;
    std::uint64_t wrong_conclusive = 0;
    double conclusive_rate = 0.0;
    double expected_conclusive_rate = 0.0;
    double error_rate = 0.0;
};

TrialReport discrimination_trial(const DiscriminationPovm &d, Candidate ground_truth,
                                 std::uint64_t n, std::uint64_t seed);

}  // namespace qmeas
