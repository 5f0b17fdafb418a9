// Copyright 2026 The orbitalsim Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Gate-file JSON.
 *
 * A matrix is a row-major array of rows, each row an array of [re, im]
 * pairs. A gate file is one of
 *   - {"gates": [matrix, ...]}
 *   - [matrix, ...]
 *   - matrix            (a single gate)
 */
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../orbital.hpp"

namespace orbitalsim::cli {

using nlohmann::json;

class GateFileError : public ArgumentError {
  public:
    using ArgumentError::ArgumentError;
};

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json vector_to_json(const CVector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

inline json matrix_to_json(const CMatrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json gates_to_json(const GateSequence &gates) {
    json list = json::array();
    for (const auto &g : gates.gates()) {
        list.push_back(matrix_to_json(g.matrix()));
    }
    return json{{"gates", std::move(list)}};
}

namespace detail {
inline bool is_number_pair(const json &j) {
    return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

/// True when j looks like a matrix (rows of [re, im] pairs) rather than a list.
inline bool looks_like_matrix(const json &j) {
    return j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() &&
           is_number_pair(j[0][0]);
}

inline CMatrix json_to_matrix(const json &j, std::size_t gate_index) {
    const std::string who = "gate " + std::to_string(gate_index);
    if (!j.is_array() || j.empty()) {
        throw GateFileError(who + ": matrix must be a non-empty array of rows");
    }
    const auto n = static_cast<Eigen::Index>(j.size());
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw GateFileError(who + ": row " + std::to_string(r) + " must have " +
                                std::to_string(n) + " entries");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            const json &z = row[static_cast<std::size_t>(c)];
            if (!is_number_pair(z)) {
                throw GateFileError(who + ": entry (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") must be [re, im]");
            }
            m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}
} // namespace detail

inline GateSequence parse_gates(const json &doc) {
    json list;
    if (doc.is_object()) {
        if (!doc.contains("gates")) {
            throw GateFileError("gate file object needs a \"gates\" key");
        }
        list = doc.at("gates");
    } else if (detail::looks_like_matrix(doc)) {
        list = json::array({doc});
    } else {
        list = doc;
    }
    if (!list.is_array()) {
        throw GateFileError("gate list must be an array");
    }
    if (list.empty()) {
        throw GateFileError("gate list is empty (need M >= 1)");
    }
    std::vector<DenseOperator> gates;
    for (std::size_t i = 0; i < list.size(); ++i) {
        DenseOperator op(detail::json_to_matrix(list[i], i));
        if (!op.is_unitary()) {
            throw GateFileError("gate " + std::to_string(i) + " is not unitary (error " +
                                std::to_string(op.unitarity_error()) + ")");
        }
        if (i > 0 && op.dim() != gates.front().dim()) {
            throw GateFileError("gate " + std::to_string(i) + " has dim " +
                                std::to_string(op.dim()) + ", expected " +
                                std::to_string(gates.front().dim()));
        }
        gates.push_back(std::move(op));
    }
    return GateSequence(std::move(gates));
}

inline GateSequence load_gates(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw GateFileError("cannot open gate file '" + path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error &e) {
        throw GateFileError("gate file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_gates(doc);
}

} // namespace orbitalsim::cli
