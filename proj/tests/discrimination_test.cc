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
#include <functional>

#include <gtest/gtest.h>

#include "qmeas/error.h"
#include "test_support.h"

using namespace qmeas;
using namespace qmeas::testing;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

PureState zero() { return PureState::basis(2, 0); }
PureState one() { return PureState::basis(2, 1); }
PureState plus() { return PureState(ket({kS, kS})); }

ErrorKind kind_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected a qmeas::Error";
    return ErrorKind::ValidationFailure;
}

/// |<a|b>| by explicit summation.
double overlap_oracle(const PureState &a, const PureState &b) {
    Complex acc = 0.0;
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        acc += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    }
    return std::abs(acc);
}

void expect_distribution(const OutcomeDistribution &d, std::initializer_list<double> expected, double tol) {
    ASSERT_EQ(d.size(), expected.size());
    std::size_t i = 0;
    for (double e : expected) {
        EXPECT_NEAR(d.probabilities()[i], e, tol) << "outcome " << i;
        ++i;
    }
}

}  // namespace

TEST(discrimination, orthogonal_limit) {
    const auto d = build_discrimination_povm(zero(), one(), 1.0);
    EXPECT_LE(max_abs_diff(d.povm.op(0), ket_bra({0.0, 1.0})), 1e-15);
    EXPECT_LE(max_abs_diff(d.povm.op(1), ket_bra({1.0, 0.0})), 1e-15);
    EXPECT_LE(max_abs_diff(d.povm.op(2), ComplexMatrix::Zero(2, 2)), 1e-15);
    EXPECT_EQ(d.povm.labels(), (std::vector<std::string>{"0", "1", "2"}));
}

TEST(discrimination, half_parameter_inconclusive_spectrum) {
    const auto d = build_discrimination_povm(zero(), plus(), 0.5);
    const auto [lo, hi] = eigenvalues_2x2(d.povm.op(2));
    EXPECT_NEAR(lo, 1.0 - 0.5 * (1.0 + kS), 1e-12);
    EXPECT_NEAR(hi, 1.0 - 0.5 * (1.0 - kS), 1e-12);
    EXPECT_NEAR(lo, 0.1464, 1e-4);
    EXPECT_NEAR(hi, 0.8536, 1e-4);
    EXPECT_TRUE(is_psd(d.povm.op(2)));
}

TEST(discrimination, default_parameter_is_maximal) {
    const auto d = build_discrimination_povm(zero(), plus());
    EXPECT_NEAR(d.a, 1.0 / (1.0 + kS), 1e-15);
    EXPECT_NEAR(d.a, 0.585786, 1e-6);
    EXPECT_NEAR(max_feasible_parameter(zero(), plus()), d.a, 1e-15);
    // Q2 singular: one eigenvalue vanishes.
    EXPECT_NEAR(eigenvalues_2x2(d.povm.op(2)).first, 0.0, 1e-12);
}

TEST(discrimination, higher_dimension_bound) {
    const PureState psi = PureState::basis(3, 0);
    const PureState phi(ket({kS, kS, 0.0}));
    EXPECT_NEAR(max_feasible_parameter(psi, phi), 0.5, 1e-15);
    const auto d = build_discrimination_povm(psi, phi);
    EXPECT_NEAR(d.a, 0.5, 1e-15);
    EXPECT_NEAR(std::real(d.povm.op(2)(2, 2)), 0.0, 1e-15);
    EXPECT_EQ(kind_of([&] { build_discrimination_povm(psi, phi, 0.55); }), ErrorKind::InfeasibleParameter);
    expect_distribution(discrimination_probabilities(d, Candidate::Psi), {0.0, 0.25, 0.75}, 1e-12);
}

TEST(discrimination, errors) {
    EXPECT_EQ(kind_of([] { build_discrimination_povm(zero(), zero()); }), ErrorKind::ParallelStates);
    const PureState phased(ket({Complex(0.0, 1.0), 0.0}));
    EXPECT_EQ(kind_of([&] { build_discrimination_povm(zero(), phased); }), ErrorKind::ParallelStates);
    EXPECT_EQ(kind_of([] { build_discrimination_povm(zero(), plus(), 0.9); }), ErrorKind::InfeasibleParameter);
    EXPECT_EQ(kind_of([] { build_discrimination_povm(zero(), plus(), 0.0); }), ErrorKind::InfeasibleParameter);
    EXPECT_EQ(kind_of([] { build_discrimination_povm(zero(), plus(), -0.2); }), ErrorKind::InfeasibleParameter);
    EXPECT_EQ(kind_of([] { build_discrimination_povm(zero(), PureState::basis(3, 1)); }), ErrorKind::ShapeMismatch);
    EXPECT_EQ(kind_of([] { build_discrimination_povm(PureState::basis(1, 0), PureState::basis(1, 0)); }),
              ErrorKind::ShapeMismatch);
}

TEST(discrimination, parameter_below_one_half_is_accepted) {
    // Only the positivity bound constrains a.
    const auto d = build_discrimination_povm(zero(), plus(), 0.1);
    EXPECT_NEAR(discrimination_probabilities(d, Candidate::Psi).probabilities()[1], 0.05, 1e-12);
}

TEST(discrimination, worked_instance_probabilities) {
    const auto d = build_discrimination_povm(zero(), plus(), 0.5);
    expect_distribution(discrimination_probabilities(d, Candidate::Psi), {0.0, 0.25, 0.75}, 1e-10);
    expect_distribution(discrimination_probabilities(d, Candidate::Phi), {0.25, 0.0, 0.75}, 1e-10);
    EXPECT_LE(discrimination_probabilities(d, Candidate::Psi).probabilities()[0], 1e-12);
}

TEST(discrimination, classify) {
    EXPECT_EQ(classify_outcome("1"), Verdict::DefinitelyPsi);
    EXPECT_EQ(classify_outcome("0"), Verdict::DefinitelyPhi);
    EXPECT_EQ(classify_outcome("2"), Verdict::Inconclusive);
    EXPECT_EQ(kind_of([] { classify_outcome("3"); }), ErrorKind::UnknownLabel);
    EXPECT_EQ(verdict_name(Verdict::Inconclusive), "Inconclusive");
}

TEST(discrimination, trial_orthogonal) {
    const auto d = build_discrimination_povm(zero(), one(), 1.0);
    const auto r = discrimination_trial(d, Candidate::Psi, 1000, 4);
    EXPECT_EQ(r.definitely_psi, 1000u);
    EXPECT_EQ(r.inconclusive, 0u);
    EXPECT_EQ(r.wrong_conclusive, 0u);
    EXPECT_DOUBLE_EQ(r.conclusive_rate, 1.0);
}

TEST(discrimination, trial_worked_instance) {
    const auto d = build_discrimination_povm(zero(), plus(), 0.5);
    const std::uint64_t n = 100000;
    const double sigma = std::sqrt(n * 0.25 * 0.75) / n;
    for (Candidate c : {Candidate::Psi, Candidate::Phi}) {
        const auto r = discrimination_trial(d, c, n, 11);
        EXPECT_EQ(r.trials, n);
        EXPECT_EQ(r.definitely_psi + r.definitely_phi + r.inconclusive, n);
        EXPECT_EQ(r.wrong_conclusive, 0u);
        EXPECT_EQ(r.error_rate, 0.0);
        EXPECT_NEAR(r.conclusive_rate, 0.25, 3.0 * sigma);
        EXPECT_NEAR(r.expected_conclusive_rate, 0.25, 1e-12);
    }
}

TEST(discrimination, trial_empty) {
    const auto d = build_discrimination_povm(zero(), plus(), 0.5);
    const auto r = discrimination_trial(d, Candidate::Phi, 0, 1);
    EXPECT_EQ(r.definitely_psi + r.definitely_phi + r.inconclusive, 0u);
    EXPECT_EQ(r.conclusive_rate, 0.0);
}

TEST(discrimination_property, zero_error_and_closed_forms) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> fraction(0.05, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = uniform_size(2, 4, rng);
        const PureState psi = random_state(dim, rng);
        const PureState phi = random_state(dim, rng);
        const double f = overlap_oracle(psi, phi);
        // Eigenvalues of Q2: 1 - a(1 -+ f) on span{psi, phi}, 1 - 2a elsewhere.
        const double a_max = dim == 2 ? 1.0 / (1.0 + f) : std::min(1.0 / (1.0 + f), 0.5);
        const double a = fraction(rng) * a_max;
        const auto d = build_discrimination_povm(psi, phi, a);
        const double p1 = a * (1.0 - f * f);

        const auto given_psi = discrimination_probabilities(d, Candidate::Psi).probabilities();
        ASSERT_LE(given_psi[0], 1e-12);
        ASSERT_NEAR(given_psi[1], p1, 1e-10);
        ASSERT_NEAR(given_psi[2], 1.0 - p1, 1e-10);

        const auto given_phi = discrimination_probabilities(d, Candidate::Phi).probabilities();
        ASSERT_LE(given_phi[1], 1e-12);
        ASSERT_NEAR(given_phi[0], p1, 1e-10);
        ASSERT_NEAR(given_phi[2], 1.0 - p1, 1e-10);

        ASSERT_LE(max_abs_diff(d.povm.op(0) + d.povm.op(1) + d.povm.op(2), identity(static_cast<Eigen::Index>(dim))),
                  1e-12);
    }
}

TEST(discrimination_property, conclusive_probability_increases_with_parameter) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const PureState psi = random_state(2, rng);
        const PureState phi = random_state(2, rng);
        const double a_max = max_feasible_parameter(psi, phi);
        double previous = -1.0;
        for (int step = 1; step <= 20; ++step) {
            const double a = a_max * step / 20.0;
            const auto d = build_discrimination_povm(psi, phi, a);
            const double p = discrimination_probabilities(d, Candidate::Psi).probabilities()[1];
            ASSERT_GT(p, previous);
            ASSERT_NEAR(p, conclusive_probability(psi, phi, a), 1e-10);
            previous = p;
        }
    }
}
