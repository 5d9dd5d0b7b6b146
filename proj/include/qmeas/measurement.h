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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmeas/linalg.h"
#include "qmeas/states.h"

namespace qmeas {

struct LabeledOperator {
    std::string label;
    ComplexMatrix op;
};

/// Unvalidated input to the validators below.
using RawOperatorSet = std::vector<LabeledOperator>;

/// Attaches the default labels "0", "1", ... in input order.
RawOperatorSet label_operators(std::vector<ComplexMatrix> ops);

/// Common storage for the validated measurement types. Instances only come
/// out of the matching validate_* function, so holding one is proof that the
/// invariants were checked.
class OperatorSet {
  public:
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return outcomes_.size(); }
    const std::vector<LabeledOperator> &outcomes() const { return outcomes_; }
    const std::string &label(std::size_t i) const { return outcomes_.at(i).label; }
    const ComplexMatrix &op(std::size_t i) const { return outcomes_.at(i).op; }
    std::vector<ComplexMatrix> operators() const;
    std::vector<std::string> labels() const;

    /// Throws UnknownLabel.
    std::size_t index_of(std::string_view label) const;

  protected:
    explicit OperatorSet(RawOperatorSet outcomes);

  private:
    std::size_t dim_;
    std::vector<LabeledOperator> outcomes_;
};

class PvmSet : public OperatorSet {
    friend PvmSet validate_pvm(RawOperatorSet, const Tolerance &);
    using OperatorSet::OperatorSet;
};

class PovmSet : public OperatorSet {
    friend PovmSet validate_povm(RawOperatorSet, const Tolerance &);
    using OperatorSet::OperatorSet;
};

class KrausSet : public OperatorSet {
    friend KrausSet validate_kraus(RawOperatorSet, const Tolerance &);
    using OperatorSet::OperatorSet;
};

class OutcomeDistribution {
  public:
    static constexpr double kClampFloor = -1e-12;

    /// Negative entries are clamped to zero (and the row renormalized when
    /// that changed the sum); entries above one are clamped to one.
    static OutcomeDistribution from_raw(std::vector<std::string> labels, std::vector<double> raw);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::vector<double> &probabilities() const { return probabilities_; }
    double probability(std::string_view label) const;
    double total() const;

  private:
    OutcomeDistribution(std::vector<std::string> labels, std::vector<double> probabilities);

    std::vector<std::string> labels_;
    std::vector<double> probabilities_;
};

using OutcomeCounts = std::vector<std::pair<std::string, std::uint64_t>>;

/// Checks, in order: shapes, Hermitian, PSD, idempotent, pairwise
/// orthogonal, resolution of identity. The first failure is thrown with the
/// offending index (or index pair).
PvmSet validate_pvm(RawOperatorSet candidate, const Tolerance &tol = {});
PovmSet validate_povm(RawOperatorSet candidate, const Tolerance &tol = {});
/// Checks that sum_i A_i^dagger A_i = I.
KrausSet validate_kraus(RawOperatorSet candidate, const Tolerance &tol = {});

PovmSet as_povm(const PvmSet &pvm, const Tolerance &tol = {});
/// Effects A_i^dagger A_i of a Kraus set.
PovmSet povm_from_kraus(const KrausSet &kraus, const Tolerance &tol = {});

OutcomeDistribution pvm_probabilities(const PvmSet &pvm, const PureState &psi);
OutcomeDistribution pvm_probabilities_mixed(const PvmSet &pvm, const DensityMatrix &rho);
PureState pvm_post_state(const PvmSet &pvm, std::string_view label, const PureState &psi);
DensityMatrix pvm_post_state_mixed(const PvmSet &pvm, std::string_view label,
                                   const DensityMatrix &rho);

OutcomeDistribution povm_probabilities(const PovmSet &povm, const DensityMatrix &rho);
OutcomeDistribution povm_probabilities(const PovmSet &povm, const PureState &psi);
/// tr(A_i^dagger A_i rho) for each Kraus operator.
OutcomeDistribution kraus_probabilities(const KrausSet &kraus, const DensityMatrix &rho);

/// Principal roots A_i = sqrt(Q_i). When `unitaries` is nonempty it must hold
/// one unitary per outcome and the result is U_i * sqrt(Q_i) instead.
KrausSet kraus_from_povm(const PovmSet &povm, const Tolerance &tol = {},
                         std::span<const ComplexMatrix> unitaries = {});

/// A_i rho A_i^dagger / tr(A_i^dagger A_i rho).
DensityMatrix povm_post_state(const KrausSet &kraus, std::string_view label,
                              const DensityMatrix &rho);

/// Inverse-CDF sampling over the stored outcome order. Bit-identical for a
/// fixed seed.
OutcomeCounts sample_outcomes(const OutcomeDistribution &dist, std::uint64_t n,
                              std::uint64_t seed);

}  // namespace qmeas
