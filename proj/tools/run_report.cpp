#include "run_report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace specbound::cli {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string RunReport::csv_text() const {
    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) {
        out += columns[i];
        out += (i + 1 < columns.size()) ? "," : "\n";
    }
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            out += format_number(row[i]);
            out += (i + 1 < row.size()) ? "," : "\n";
        }
    }
    return out;
}

std::string RunReport::json_text() const {
    nlohmann::json j;
    j["version"] = version;
    j["command"] = command;
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [k, v] : tolerances) t[k] = v;
    j["tolerances"] = t;
    j["flags"] = flags;
    j["columns"] = columns;
    j["row_count"] = rows.size();
    j["rows_digest"] = fnv1a_hex(csv_text());
    return j.dump(2) + "\n";
}

void RunReport::write(const std::string& out_prefix) const {
    {
        std::ofstream f(out_prefix + ".csv", std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + out_prefix + ".csv for writing");
        f << csv_text();
    }
    {
        std::ofstream f(out_prefix + ".json", std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + out_prefix + ".json for writing");
        f << json_text();
    }
}

std::vector<double> parse_grid(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("grid: expected a:b:logN or a:b:linN, got '" + spec + "'");
    const double a = std::stod(spec.substr(0, c1));
    const double b = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const std::string tail = spec.substr(c2 + 1);
    bool log_spaced;
    if (tail.rfind("log", 0) == 0)
        log_spaced = true;
    else if (tail.rfind("lin", 0) == 0)
        log_spaced = false;
    else
        throw std::invalid_argument("grid: spacing must be logN or linN");
    const int n = std::stoi(tail.substr(3));
    if (n < 1) throw std::invalid_argument("grid: need at least one point");
    if (log_spaced && (a <= 0.0 || b <= 0.0))
        throw std::invalid_argument("grid: log spacing needs positive endpoints");
    if (!(b >= a)) throw std::invalid_argument("grid: need b >= a");

    std::vector<double> pts(n);
    for (int i = 0; i < n; ++i) {
        const double w = (n == 1) ? 0.0 : static_cast<double>(i) / (n - 1);
        pts[i] = log_spaced ? a * std::pow(b / a, w) : a + (b - a) * w;
    }
    return pts;
}

}  // namespace specbound::cli
