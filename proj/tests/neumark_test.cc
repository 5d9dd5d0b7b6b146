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

#include <cmath>
#include <functional>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.h"

using namespace qmeas;
using namespace qmeas::testing;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

PovmSet computational_povm() {
    return validate_povm(label_operators({ket_bra({1.0, 0.0}), ket_bra({0.0, 1.0})}));
}

PovmSet halves_povm() {
    return validate_povm(label_operators({0.5 * identity(2), 0.5 * identity(2)}));
}

/// Sum of |v><v| over the fine vectors whose parent is `coarse`.
ComplexMatrix regroup(const RankOneRefinement &r, std::size_t coarse) {
    const auto k = static_cast<Eigen::Index>(r.original_dim);
    ComplexMatrix acc = ComplexMatrix::Zero(k, k);
    for (std::size_t j = 0; j < r.fine_count(); ++j) {
        if (r.parent[j] == coarse) {
            acc += r.vectors[j] * r.vectors[j].adjoint();
        }
    }
    return acc;
}

}  // namespace

TEST(neumark, refine_trine) {
    const auto r = refine_to_rank_one(trine_povm());
    ASSERT_EQ(r.fine_count(), 3u);
    EXPECT_EQ(r.original_dim, 2u);
    for (std::size_t i = 0; i < 3; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / 3.0;
        EXPECT_EQ(r.parent[i], i);
        // Eigenvectors carry an arbitrary phase; compare the outer product.
        const ComplexMatrix expected = (2.0 / 3.0) * ket_bra({std::cos(t), std::sin(t)});
        EXPECT_LE(max_abs_diff(r.vectors[i] * r.vectors[i].adjoint(), expected), 1e-12);
        EXPECT_NEAR(r.vectors[i].norm(), std::sqrt(2.0 / 3.0), 1e-12);
    }
    EXPECT_EQ(r.fine_labels[0], "0.0");
    EXPECT_EQ(r.coarse_labels, (std::vector<std::string>{"0", "1", "2"}));
}

TEST(neumark, refine_identity_splits_into_two) {
    const auto r = refine_to_rank_one(validate_povm(label_operators({identity(2)})));
    ASSERT_EQ(r.fine_count(), 2u);
    EXPECT_EQ(r.parent[0], 0u);
    EXPECT_EQ(r.parent[1], 0u);
    EXPECT_EQ(r.fine_labels[1], "0.1");
    EXPECT_LE(max_abs_diff(regroup(r, 0), identity(2)), 1e-12);
}

TEST(neumark, refine_computational_basis) {
    const auto r = refine_to_rank_one(computational_povm());
    ASSERT_EQ(r.fine_count(), 2u);
    EXPECT_NEAR(std::abs(r.vectors[0][0]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(r.vectors[1][1]), 1.0, 1e-15);
}

TEST(neumark, refine_orders_eigenvalues_descending) {
    ComplexMatrix q = ComplexMatrix::Zero(2, 2);
    q(0, 0) = 0.2;
    q(1, 1) = 0.7;
    const auto r = refine_to_rank_one(validate_povm(label_operators({q, identity(2) - q})));
    ASSERT_EQ(r.fine_count(), 4u);
    EXPECT_NEAR(r.vectors[0].squaredNorm(), 0.7, 1e-12);
    EXPECT_NEAR(r.vectors[1].squaredNorm(), 0.2, 1e-12);
    EXPECT_NEAR(r.vectors[2].squaredNorm(), 0.8, 1e-12);
    EXPECT_NEAR(r.vectors[3].squaredNorm(), 0.3, 1e-12);
}

TEST(neumark, refine_drops_zero_eigenvalues) {
    const PovmSet with_zero = validate_povm(label_operators({identity(2), ComplexMatrix::Zero(2, 2)}));
    const auto r = refine_to_rank_one(with_zero);
    EXPECT_EQ(r.fine_count(), 2u);
    const auto d = dilate(r);
    const auto coarse = dilated_probabilities(d, PureState::basis(2, 1)).coarse;
    EXPECT_EQ(coarse.size(), 2u);
    EXPECT_NEAR(coarse.probabilities()[1], 0.0, 1e-15);
}

TEST(neumark, measurement_matrix_examples) {
    const auto comp = measurement_matrix(refine_to_rank_one(computational_povm()));
    EXPECT_EQ(comp.matrix.rows(), 2);
    EXPECT_LE(max_abs_diff(comp.matrix * comp.matrix.adjoint(), identity(2)), 1e-15);

    const auto trine = measurement_matrix(refine_to_rank_one(trine_povm()));
    ASSERT_EQ(trine.matrix.rows(), 3);
    ASSERT_EQ(trine.matrix.cols(), 3);
    EXPECT_LE(trine.matrix.row(2).norm(), 0.0);
    ComplexMatrix p = ComplexMatrix::Zero(3, 3);
    p(0, 0) = p(1, 1) = 1.0;
    EXPECT_LE(max_abs_diff(trine.matrix * trine.matrix.adjoint(), p), 1e-12);

    const auto single = measurement_matrix(refine_to_rank_one(validate_povm(label_operators({identity(2)}))));
    EXPECT_LE(max_abs_diff(single.matrix * single.matrix.adjoint(), identity(2)), 1e-12);
}

TEST(neumark, subspace_projector_shape) {
    const ComplexMatrix p = subspace_projector(2, 4);
    EXPECT_EQ(p.rows(), 4);
    EXPECT_EQ(p(1, 1), Complex(1.0));
    EXPECT_EQ(p(2, 2), Complex(0.0));
    EXPECT_TRUE(is_projector(p));
}

TEST(neumark, dilate_computational_basis) {
    const auto d = dilate(refine_to_rank_one(computational_povm()));
    EXPECT_EQ(d.enlarged_dim, 2u);
    for (int j = 0; j < 2; ++j) {
        EXPECT_NEAR(std::abs(d.extended_matrix(j, j)), 1.0, 1e-15);
        EXPECT_LE(max_abs_diff(d.pvm.op(static_cast<std::size_t>(j)),
                               j == 0 ? ket_bra({1.0, 0.0}) : ket_bra({0.0, 1.0})),
                  1e-15);
    }
    const auto probs = dilated_probabilities(d, PureState(ket({kS, kS})));
    EXPECT_NEAR(probs.fine.probabilities()[0], 0.5, 1e-15);
    EXPECT_EQ(probs.fine.probabilities(), probs.coarse.probabilities());
}

TEST(neumark, dilate_trine) {
    const auto r = refine_to_rank_one(trine_povm());
    const auto d = dilate(r);
    EXPECT_EQ(d.enlarged_dim, 3u);
    EXPECT_LE(max_abs_diff(d.extended_matrix.adjoint() * d.extended_matrix, identity(3)), 1e-9);
    const ComplexMatrix pu = subspace_projector(2, 3);
    const auto effects = trine_effects();
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_LE(max_abs_diff((pu * d.pvm.op(j) * pu).topLeftCorner(2, 2), effects[j]), 1e-9);
        EXPECT_LE((d.extended_matrix.col(static_cast<Eigen::Index>(j)).head(2) - r.vectors[j]).norm(), 1e-9);
    }
    const auto coarse = dilated_probabilities(d, PureState::basis(2, 0)).coarse;
    const auto oracle = trine_probabilities_on_zero();
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(coarse.probabilities()[i], oracle[i], 1e-10);
    }
}

TEST(neumark, dilate_halves_has_four_fine_outcomes) {
    const auto d = dilate(refine_to_rank_one(halves_povm()));
    EXPECT_EQ(d.enlarged_dim, 4u);
    EXPECT_EQ(d.pvm.size(), 4u);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const auto coarse = dilated_probabilities(d, random_state(2, rng)).coarse;
        ASSERT_EQ(coarse.size(), 2u);
        EXPECT_NEAR(coarse.probabilities()[0], 0.5, 1e-12);
        EXPECT_NEAR(coarse.probabilities()[1], 0.5, 1e-12);
    }
}

TEST(neumark, dilated_probabilities_rejects_wrong_dim) {
    const auto d = dilate(refine_to_rank_one(trine_povm()));
    EXPECT_THROW(dilated_probabilities(d, PureState::basis(3, 0)), Error);
}

TEST(neumark, verify_passes_for_built_dilation) {
    const auto d = dilate(refine_to_rank_one(trine_povm()));
    const auto report = verify_dilation(d, trine_povm(), 20, 5);
    EXPECT_TRUE(report.passed());
    ASSERT_TRUE(report.probability_discrepancy.has_value());
    EXPECT_LE(*report.probability_discrepancy, 1e-9);
    EXPECT_EQ(report.trials, 20u);
}

TEST(neumark, verify_flags_scaled_column) {
    auto d = dilate(refine_to_rank_one(trine_povm()));
    d.extended_matrix.col(1) *= 1.01;
    const auto report = verify_dilation(d, trine_povm(), 0, 5);
    EXPECT_FALSE(report.passed());
    EXPECT_NEAR(report.residuals.orthonormality, 1.01 * 1.01 - 1.0, 1e-9);
}

TEST(neumark, verify_without_trials_reports_identities_only) {
    const auto d = dilate(refine_to_rank_one(trine_povm()));
    const auto report = verify_dilation(d, trine_povm(), 0, 5);
    EXPECT_FALSE(report.probability_discrepancy.has_value());
    EXPECT_TRUE(report.passed());
    EXPECT_LE(report.residuals.fine_effect, 1e-9);
}

TEST(neumark, verify_rejects_mismatched_original) {
    const auto d = dilate(refine_to_rank_one(trine_povm()));
    const auto report = verify_dilation(d, halves_povm(), 5, 5);
    EXPECT_FALSE(report.passed());
}

TEST(neumark, dilate_rejects_bad_refinement) {
    auto r = refine_to_rank_one(trine_povm());
    r.vectors[0] *= 1.2;
    try {
        dilate(r);
        FAIL() << "expected DilationError";
    } catch (const DilationError &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DilationVerificationFailure);
        EXPECT_FALSE(e.identity().empty());
        EXPECT_GT(e.residual(), 1e-9);
    }
}

TEST(neumark_property, measurement_matrix_is_partial_isometry) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const PovmSet povm = random_povm(static_cast<Eigen::Index>(uniform_size(2, 4, rng)), uniform_size(2, 6, rng), rng);
        const auto m = measurement_matrix(refine_to_rank_one(povm));
        Eigen::JacobiSVD<ComplexMatrix> svd(m.matrix);
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
            const double s = svd.singularValues()[i];
            if (s > 1e-6) {
                ASSERT_NEAR(s, 1.0, 1e-9);
            } else {
                ASSERT_LE(s, 1e-9);
            }
        }
    }
}

TEST(neumark_property, refinement_reconstructs_effects) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const PovmSet povm = random_povm(static_cast<Eigen::Index>(uniform_size(2, 4, rng)), uniform_size(2, 6, rng), rng);
        const auto r = refine_to_rank_one(povm);
        for (std::size_t i = 0; i < povm.size(); ++i) {
            ASSERT_LE(max_abs_diff(regroup(r, i), povm.op(i)), 1e-10);
        }
    }
}

TEST(neumark_property, dilation_round_trip) {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = uniform_size(2, 4, rng);
        const PovmSet povm = random_povm(static_cast<Eigen::Index>(k), uniform_size(2, 6, rng), rng);
        const auto d = dilate(refine_to_rank_one(povm));
        ASSERT_NO_THROW(validate_pvm(label_operators(d.pvm.operators())));
        const auto res = dilation_residuals(d);
        ASSERT_LE(res.orthonormality, 1e-9);
        ASSERT_LE(res.projection, 1e-9);
        ASSERT_LE(res.fine_effect, 1e-9);
        for (int s = 0; s < 20; ++s) {
            const PureState psi = random_state(k, rng);
            const auto coarse = dilated_probabilities(d, psi).coarse;
            const auto expected = povm_probabilities(povm, psi);
            for (std::size_t i = 0; i < povm.size(); ++i) {
                ASSERT_NEAR(coarse.probabilities()[i], expected.probabilities()[i], 1e-9);
            }
        }
    }
}

TEST(neumark_property, rank_one_pvm_is_a_fixed_point) {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 50; ++trial) {
        const auto k = static_cast<Eigen::Index>(uniform_size(2, 5, rng));
        const auto projectors = random_pvm_projectors(k, static_cast<std::size_t>(k), rng);
        const PovmSet povm = validate_povm(label_operators(projectors));
        const auto d = dilate(refine_to_rank_one(povm));
        ASSERT_EQ(d.enlarged_dim, static_cast<std::size_t>(k));
        for (std::size_t j = 0; j < projectors.size(); ++j) {
            // P_U is the identity here, so P_j itself must match.
            ASSERT_LE(max_abs_diff(d.pvm.op(j), projectors[j]), 1e-10);
        }
    }
}
