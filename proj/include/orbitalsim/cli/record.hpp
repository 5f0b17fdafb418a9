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
 * ExperimentRecord and its JSON / CSV encodings.
 *
 * JSON layout (keys sorted):
 *
 *   {
 *     "artifact":   {"name": "orbitalsim", "version": "..."},
 *     "config":     {...every parameter, including the seed...},
 *     "provenance": {"exact": "...", "sampled": "...", "reference": "..."},
 *     "result":     {"exact": {...}, "sampled": {...}, "reference": {...}},
 *     "table":      {"columns": [...], "rows": [[...], ...]},   // optional
 *     "wall_time_seconds": 0.012
 *   }
 *
 * Every probability lives under result.exact, result.sampled or
 * result.reference; nothing sampled is emitted without the exact value next
 * to it when one can be computed.
 */
#pragma once

#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../errors.hpp"

namespace orbitalsim::cli {

using nlohmann::json;

enum class OutputFormat { json, csv };

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    bool operator==(const Table &) const = default;
};

struct ExperimentRecord {
    std::string name = "orbitalsim";
    std::string version;
    json config = json::object();
    double wall_time_seconds = 0.0;
    json result = json::object();
    std::optional<Table> table;

    bool operator==(const ExperimentRecord &) const = default;
};

inline json provenance_note() {
    return {{"exact", "computed by exact projector algebra or diagonalization, no sampling"},
            {"sampled", "frequencies from seeded Monte Carlo trials; trial i uses "
                        "RngStream(seed, i)"},
            {"reference", "values quoted for comparison only, never asserted"}};
}

inline json to_json(const ExperimentRecord &r) {
    json j{{"artifact", {{"name", r.name}, {"version", r.version}}},
           {"config", r.config},
           {"provenance", provenance_note()},
           {"result", r.result},
           {"wall_time_seconds", r.wall_time_seconds}};
    if (r.table) {
        j["table"] = {{"columns", r.table->columns}, {"rows", r.table->rows}};
    }
    return j;
}

inline ExperimentRecord record_from_json(const json &j) {
    ExperimentRecord r;
    r.name = j.at("artifact").at("name").get<std::string>();
    r.version = j.at("artifact").at("version").get<std::string>();
    r.config = j.at("config");
    r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    r.result = j.at("result");
    if (j.contains("table")) {
        Table t;
        t.columns = j["table"].at("columns").get<std::vector<std::string>>();
        t.rows = j["table"].at("rows").get<std::vector<std::vector<double>>>();
        r.table = std::move(t);
    }
    return r;
}

/// The record without wall time: the part that must be identical across
/// reruns with the same configuration and seed.
inline json deterministic_payload(const json &record) {
    json j = record;
    j.erase("wall_time_seconds");
    return j;
}

inline std::string emit(const ExperimentRecord &r, OutputFormat format) {
    if (format == OutputFormat::json) {
        // nlohmann prints doubles with round-trip precision.
        return to_json(r).dump(2) + "\n";
    }
    if (!r.table) {
        throw ArgumentError("csv output is only available for tabular experiments");
    }
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t c = 0; c < r.table->columns.size(); ++c) {
        out << (c ? "," : "") << r.table->columns[c];
    }
    out << "\n";
    for (const auto &row : r.table->rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << row[c];
        }
        out << "\n";
    }
    return out.str();
}

} // namespace orbitalsim::cli
