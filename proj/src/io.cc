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

#include "qmeas/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qmeas/error.h"

namespace qmeas::io {

namespace {

[[noreturn]] void fail(const std::string &where, const std::string &what) {
    throw FormatError(where + ": " + what);
}

const Json &field(const Json &j, const char *key, const std::string &where) {
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        fail(where, std::string("missing field '") + key + "'");
    }
    return *it;
}

std::size_t positive_size(const Json &j, const std::string &where) {
    if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) {
        fail(where, "expected a positive integer");
    }
    return static_cast<std::size_t>(j.get<std::int64_t>());
}

void check_header(const Json &j, std::initializer_list<std::string_view> kinds, std::string &kind_out) {
    const Json &version = field(j, "schema_version", "$");
    if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
        fail("$.schema_version", "expected \"" + std::string(kSchemaVersion) + "\"");
    }
    const Json &kind = field(j, "kind", "$");
    if (!kind.is_string()) {
        fail("$.kind", "expected a string");
    }
    kind_out = kind.get<std::string>();
    for (std::string_view k : kinds) {
        if (kind_out == k) {
            return;
        }
    }
    fail("$.kind", "unsupported kind '" + kind_out + "'");
}

Complex parse_complex(const Json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail(where, "expected a [re, im] pair of numbers");
    }
    const Complex z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        fail(where, "non-finite value");
    }
    return z;
}

void dump_into(const OrderedJson &j, int indent, std::string &out) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case OrderedJson::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) {
                    out += ",\n";
                }
                first = false;
                out += inner + OrderedJson(it.key()).dump() + ": ";
                dump_into(it.value(), indent + 1, out);
            }
            out += "\n" + pad + "}";
            return;
        }
        case OrderedJson::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line; [re, im] pairs and matrix
            // rows are then compact.
            bool flat = true;
            for (const auto &e : j) {
                if (e.is_object() || (e.is_array() && !(e.size() == 2 && e[0].is_number()))) {
                    flat = false;
                    break;
                }
            }
            out += "[";
            bool first = true;
            for (const auto &e : j) {
                if (!first) {
                    out += flat ? ", " : ",";
                }
                first = false;
                if (!flat) {
                    out += "\n" + inner;
                }
                dump_into(e, indent + 1, out);
            }
            if (!flat) {
                out += "\n" + pad;
            }
            out += "]";
            return;
        }
        case OrderedJson::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string format_double(double x) {
    if (!std::isfinite(x)) {
        // JSON has no spelling for these; reports should never carry them.
        return "null";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%#.17g", x);
    return buf;
}

std::string dump(const OrderedJson &j) {
    std::string out;
    dump_into(j, 0, out);
    out += "\n";
    return out;
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError(path + ": cannot open for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw FormatError(path + ": read error");
    }
    return buf.str();
}

void write_text_file(const std::string &path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError(path + ": cannot open for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw FormatError(path + ": write error");
    }
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception &e) {
        // Parse errors carry "line L, column C"; numeric overflow is reported too.
        throw FormatError(e.what());
    }
}

OrderedJson complex_json(Complex z) {
    return OrderedJson::array({z.real(), z.imag()});
}

OrderedJson vector_json(const ComplexVector &v) {
    OrderedJson out = OrderedJson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_json(v[i]));
    }
    return out;
}

OrderedJson matrix_json(const ComplexMatrix &m) {
    OrderedJson rows = OrderedJson::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        OrderedJson row = OrderedJson::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexVector parse_vector(const Json &j, std::size_t size, const std::string &where) {
    if (!j.is_array() || j.size() != size) {
        fail(where, "expected an array of " + std::to_string(size) + " [re, im] pairs");
    }
    ComplexVector v(static_cast<Eigen::Index>(size));
    for (std::size_t i = 0; i < size; ++i) {
        v[static_cast<Eigen::Index>(i)] = parse_complex(j[i], where + "[" + std::to_string(i) + "]");
    }
    return v;
}

ComplexMatrix parse_matrix(const Json &j, std::size_t rows, std::size_t cols, const std::string &where) {
    if (!j.is_array() || j.size() != rows) {
        fail(where, "expected " + std::to_string(rows) + " rows");
    }
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_where = where + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols) {
            fail(row_where, "expected " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                parse_complex(j[r][c], row_where + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

OperatorSetFile parse_operator_set(const Json &j) {
    OperatorSetFile file;
    check_header(j, {"pvm", "povm", "kraus"}, file.kind);
    file.dim = positive_size(field(j, "dim", "$"), "$.dim");
    const Json &outcomes = field(j, "outcomes", "$");
    if (!outcomes.is_array() || outcomes.empty()) {
        fail("$.outcomes", "expected a nonempty array");
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const std::string where = "$.outcomes[" + std::to_string(i) + "]";
        const Json &entry = outcomes[i];
        std::string label = std::to_string(i);
        if (entry.is_object() && entry.contains("label")) {
            if (!entry["label"].is_string()) {
                fail(where + ".label", "expected a string");
            }
            label = entry["label"].get<std::string>();
        }
        if (!seen.insert(label).second) {
            fail(where + ".label", "duplicate label '" + label + "'");
        }
        ComplexMatrix m = parse_matrix(field(entry, "matrix", where), file.dim, file.dim, where + ".matrix");
        file.outcomes.push_back({std::move(label), std::move(m)});
    }
    return file;
}

StateFile parse_state(const Json &j) {
    StateFile file;
    check_header(j, {"pure", "density"}, file.kind);
    file.dim = positive_size(field(j, "dim", "$"), "$.dim");
    if (file.kind == "pure") {
        file.amplitudes = parse_vector(field(j, "amplitudes", "$"), file.dim, "$.amplitudes");
    } else {
        file.matrix = parse_matrix(field(j, "matrix", "$"), file.dim, file.dim, "$.matrix");
    }
    return file;
}

OrderedJson operator_set_json(std::string_view kind, std::size_t dim, const RawOperatorSet &outcomes) {
    OrderedJson out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = kind;
    out["dim"] = dim;
    OrderedJson list = OrderedJson::array();
    for (const auto &entry : outcomes) {
        OrderedJson item;
        item["label"] = entry.label;
        item["matrix"] = matrix_json(entry.op);
        list.push_back(std::move(item));
    }
    out["outcomes"] = std::move(list);
    return out;
}

OrderedJson operator_set_json(std::string_view kind, const OperatorSet &set) {
    return operator_set_json(kind, set.dim(), set.outcomes());
}

OrderedJson pure_state_json(const PureState &psi) {
    OrderedJson out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "pure";
    out["dim"] = psi.dim();
    out["amplitudes"] = vector_json(psi.amplitudes());
    return out;
}

OrderedJson density_json(const DensityMatrix &rho) {
    OrderedJson out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "density";
    out["dim"] = rho.dim();
    out["matrix"] = matrix_json(rho.matrix());
    return out;
}

OrderedJson ancilla_model_json(const AncillaModel &m) {
    OrderedJson out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "ancilla_model";
    out["system_dim"] = m.system_dim();
    out["ancilla_dim"] = m.ancilla_dim();
    out["unitary"] = matrix_json(m.unitary());
    out["ready_state"] = vector_json(m.ready_state().amplitudes());
    out["local_pvm"] = operator_set_json("pvm", m.local_pvm());
    return out;
}

AncillaModel parse_ancilla_model(const Json &j, const Tolerance &tol) {
    std::string kind;
    check_header(j, {"ancilla_model"}, kind);
    const std::size_t k = positive_size(field(j, "system_dim", "$"), "$.system_dim");
    const std::size_t n = positive_size(field(j, "ancilla_dim", "$"), "$.ancilla_dim");
    ComplexMatrix unitary = parse_matrix(field(j, "unitary", "$"), k * n, k * n, "$.unitary");
    ComplexVector ready = parse_vector(field(j, "ready_state", "$"), n, "$.ready_state");
    OperatorSetFile local = parse_operator_set(field(j, "local_pvm", "$"));
    if (local.dim != n) {
        fail("$.local_pvm.dim", "does not match ancilla_dim");
    }
    try {
        return AncillaModel(std::move(unitary), PureState(std::move(ready)), validate_pvm(std::move(local.outcomes), tol),
                            tol);
    } catch (const Error &e) {
        fail("$", e.what());
    }
}

OrderedJson dilation_mapping_json(const NeumarkDilation &d) {
    OrderedJson out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "neumark_mapping";
    out["original_dim"] = d.original_dim;
    out["enlarged_dim"] = d.enlarged_dim;
    out["coarse_labels"] = d.coarse_labels;
    OrderedJson map = OrderedJson::array();
    for (std::size_t j = 0; j < d.pvm.size(); ++j) {
        OrderedJson item;
        item["fine"] = d.pvm.label(j);
        item["coarse"] = d.coarse_labels[d.parent[j]];
        map.push_back(std::move(item));
    }
    out["fine_to_coarse"] = std::move(map);
    out["subspace_projector"] = matrix_json(d.subspace_projector);
    return out;
}

}  // namespace qmeas::io
