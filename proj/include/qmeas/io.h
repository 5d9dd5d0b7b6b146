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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qmeas/ancilla.h"
#include "qmeas/linalg.h"
#include "qmeas/measurement.h"
#include "qmeas/neumark.h"
#include "qmeas/states.h"

namespace qmeas::io {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";

/// Unreadable file, malformed JSON, or a document that violates the schema.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OperatorSetFile {
    std::string kind; // "pvm" | "povm" | "kraus"
    std::size_t dim = 0;
    RawOperatorSet outcomes;
};

struct StateFile {
    std::string kind; // "pure" | "density"
    std::size_t dim = 0;
    ComplexVector amplitudes; // kind == "pure"
    ComplexMatrix matrix;     // kind == "density"
};

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, std::string_view contents);
Json parse_json(std::string_view text);

/// Complex numbers are [re, im] pairs; matrices are row-major nested arrays.
OrderedJson complex_json(Complex z);
OrderedJson vector_json(const ComplexVector &v);
OrderedJson matrix_json(const ComplexMatrix &m);
ComplexVector parse_vector(const Json &j, std::size_t size, const std::string &where);
ComplexMatrix parse_matrix(const Json &j, std::size_t rows, std::size_t cols, const std::string &where);

OperatorSetFile parse_operator_set(const Json &j);
StateFile parse_state(const Json &j);

OrderedJson operator_set_json(std::string_view kind, const OperatorSet &set);
OrderedJson operator_set_json(std::string_view kind, std::size_t dim, const RawOperatorSet &outcomes);
OrderedJson pure_state_json(const PureState &psi);
OrderedJson density_json(const DensityMatrix &rho);

/// Unitary, ready state and local PVM of an ancilla realization.
OrderedJson ancilla_model_json(const AncillaModel &m);
AncillaModel parse_ancilla_model(const Json &j, const Tolerance &tol = {});

/// Fine-to-coarse label map and subspace projector of a dilation.
OrderedJson dilation_mapping_json(const NeumarkDilation &d);

/// Two-space indented JSON; every floating-point value is written with 17
/// significant digits so that doubles reload bit-exactly.
std::string dump(const OrderedJson &j);
std::string format_double(double x);

}  // namespace qmeas::io
