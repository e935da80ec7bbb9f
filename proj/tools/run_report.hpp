#pragma once

#include <map>
#include <string>
#include <vector>

namespace specbound::cli {

/// Reproducible run record: one CSV table plus a JSON sidecar carrying the
/// command echo, parameters, hypothesis flags and a digest of the rows.
struct RunReport {
    std::string command;
    std::string version = "0.1.0";
    std::map<std::string, std::string> params;
    std::map<std::string, double> tolerances;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> flags;

    std::string csv_text() const;           // RFC-4180 style, '.' decimal, header row
    std::string json_text() const;          // includes rows_digest of csv_text()
    void write(const std::string& out_prefix) const;  // prefix.csv + prefix.json
};

/// Deterministic "%.12g" double formatting shared by all writers.
std::string format_number(double v);

/// FNV-1a 64-bit digest, hex-encoded.
std::string fnv1a_hex(const std::string& data);

/// Lambda-grid syntax "a:b:logN" / "a:b:linN"; N >= 1, log requires a, b > 0.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace specbound::cli
