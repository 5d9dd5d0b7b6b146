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
#include <string>
#include <vector>

#include "qmeas/linalg.h"
#include "qmeas/measurement.h"
#include "qmeas/states.h"

namespace qmeas {

/// Unitary A on system (dim k) tensor ancilla (dim N), the ancilla's ready
/// state, and a PVM acting on the ancilla factor only. Index convention is
/// system-major: |j> (x) |i> sits at j * N + i.
class AncillaModel {
  public:
    /// Throws ShapeMismatch, NotUnitary, or NotNormalized.
    AncillaModel(ComplexMatrix unitary, PureState ready_state, PvmSet local_pvm, const Tolerance &tol = {});

    std::size_t system_dim() const { return system_dim_; }
    std::size_t ancilla_dim() const { return local_pvm_.dim(); }
    const ComplexMatrix &unitary() const { return unitary_; }
    const PureState &ready_state() const { return ready_state_; }
    const PvmSet &local_pvm() const { return local_pvm_; }

  private:
    std::size_t system_dim_;
    ComplexMatrix unitary_;
    PureState ready_state_;
    PvmSet local_pvm_;
};

/// O_i = A^dagger (I_k (x) P_i) A.
struct CombinedOperator {
    std::string label;
    ComplexMatrix matrix;
};

/// Builds A whose columns at |j> (x) |0> are the isometry
/// |psi> (x) |0> -> sum_i A_i |psi> (x) |i>, completed to a unitary by
/// pivoted Gram-Schmidt over the standard basis. The induced POVM is checked
/// against the Kraus effects before returning.
AncillaModel realize_povm_with_ancilla(const KrausSet &kraus, const Tolerance &tol = {});

std::vector<CombinedOperator> combined_operators(const AncillaModel &m);

/// Q_i = W^dagger O_i W with W : |psi> -> |psi> (x) |ready>. Zero effects are
/// kept so labels line up with the local PVM.
PovmSet induced_povm(const AncillaModel &m, const Tolerance &tol = {});

OutcomeDistribution ancilla_probabilities(const AncillaModel &m, const PureState &psi);

}  // namespace qmeas
