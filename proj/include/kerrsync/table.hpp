// Numeric result tables with lossless CSV round-tripping and a JSON
// metadata sidecar. Every sweep produces one table; the CSV holds only
// numbers so downstream plotting stays trivial, while provenance (config,
// hash, seed, versions, per-point failures) lives next to it in .meta.json.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kerrsync {

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // each row has columns.size() entries

    // Sidecar payload.
    std::string mode;
    std::uint64_t seed = 0;
    std::string config_canonical;
    std::uint64_t config_digest = 0;
    double runtime_seconds = 0.0;
    int threads_used = 1;
    // One message per failed point, "row <i>: <what>"; empty when clean.
    std::vector<std::string> point_errors;
};

// Cells are written as %.16e so finite doubles survive a write/read cycle
// bit for bit; NaN round-trips via the literal "nan".
void write_csv(const ResultTable& table, const std::string& path);
ResultTable read_csv(const std::string& path);

// JSON sidecar at `path` (conventionally <out>.meta.json). The timestamp
// lives only here so the CSV itself stays reproducible byte for byte.
void write_metadata(const ResultTable& table, const std::string& path);

// Equality of shape and cells, treating NaN as equal to NaN.
bool same_numbers(const ResultTable& a, const ResultTable& b);

}  // namespace kerrsync
