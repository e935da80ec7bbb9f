#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

TEST_SUITE_BEGIN("cli");

namespace {

struct CliResult {
    int exit_code;
    std::string csv;
    nlohmann::json json;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args, const std::string& prefix) {
    const std::string cmd = std::string(SPECBOUND_CLI_PATH) + " --out " + prefix + " " +
                            args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WEXITSTATUS(raw);
    r.csv = slurp(prefix + ".csv");
    const std::string jtext = slurp(prefix + ".json");
    if (!jtext.empty()) r.json = nlohmann::json::parse(jtext, nullptr, false);
    return r;
}

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           std::vector<std::string>* header = nullptr) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string line;
    bool first = true;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        if (first) {
            if (header) {
                while (std::getline(ls, cell, ',')) header->push_back(cell);
            }
            first = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(row);
    }
    return rows;
}

std::string tmp_prefix(const std::string& tag) { return "/tmp/specbound_test_" + tag; }

}  // namespace

TEST_CASE("bound horn: row count, ratio constancy, sidecar schema") {
    auto r = run_cli("bound horn --d 2 --nu 2 --sigma 1.5 --lambda 1:100:log25",
                     tmp_prefix("horn"));
    REQUIRE(r.exit_code == 0);
    std::vector<std::string> header;
    auto rows = parse_csv(r.csv, &header);
    CHECK(header == std::vector<std::string>{"lambda", "bound", "asymptotic_leading", "ratio"});
    REQUIRE(rows.size() == 25);
    for (const auto& row : rows) CHECK(row[3] == doctest::Approx(1.0).epsilon(1e-9));

    // sidecar carries the published schema's required fields
    for (const char* key : {"version", "command", "params", "flags", "rows_digest"})
        CHECK(r.json.contains(key));
    CHECK(r.json["rows_digest"].get<std::string>().size() == 16);

    // validate against the published schema's required/type lists
    auto schema = nlohmann::json::parse(slurp(SPECBOUND_SCHEMA_PATH));
    for (const auto& req : schema["required"])
        CHECK(r.json.contains(req.get<std::string>()));

    SUBCASE("byte-identical reruns") {
        auto r2 = run_cli("bound horn --d 2 --nu 2 --sigma 1.5 --lambda 1:100:log25",
                          tmp_prefix("horn_rerun"));
        CHECK(r2.csv == r.csv);
        CHECK(r2.json == r.json);
    }
}

TEST_CASE("bound horn: critical rows vanish below the threshold") {
    auto r = run_cli("bound horn --d 2 --nu 1 --sigma 1.5 --lambda 0.1:1:lin10",
                     tmp_prefix("horn_crit"));
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.csv);
    const double thr = std::numbers::pi * std::numbers::pi / 16.0;
    int below = 0;
    for (const auto& row : rows) {
        if (row[0] <= thr) {
            CHECK(row[1] == 0.0);
            ++below;
        } else {
            CHECK(row[1] > 0.0);
        }
    }
    CHECK(below >= 5);
}

TEST_CASE("bound urchin: sandwich per row and threshold zeros") {
    auto r = run_cli("bound urchin --kind linear --sigma 1.5 --lambda 1:1000:log12",
                     tmp_prefix("urchin"));
    REQUIRE(r.exit_code == 0);
    std::vector<std::string> header;
    auto rows = parse_csv(r.csv, &header);
    CHECK(header ==
          std::vector<std::string>{"lambda", "n_hat", "r_hat", "upper", "lower", "vdb_upper"});
    for (const auto& row : rows) {
        CHECK(row[4] <= row[3] * (1.0 + 1e-12));     // lower <= upper
        if (row[0] <= 15.0 / 4.0) CHECK(row[3] == 0.0);
    }
}

TEST_CASE("bound urchin: explicit file failing the doubling condition is flagged") {
    const std::string radii = tmp_prefix("radii") + ".txt";
    {
        std::ofstream f(radii);
        f << "1.0\n3.0\n7.0\n";  // 3 > 2*1: doubling violated
    }
    auto r = run_cli("bound urchin --kind explicit --file " + radii +
                         " --sigma 1.5 --lambda 4:40:log4",
                     tmp_prefix("urchin_explicit"));
    REQUIRE(r.exit_code == 0);  // totality: rows still emitted
    CHECK(parse_csv(r.csv).size() == 4);
    bool flagged = false;
    for (const auto& f : r.json["flags"])
        if (f.get<std::string>().find("2 r_n") != std::string::npos ||
            f.get<std::string>().find("doubling") != std::string::npos ||
            f.get<std::string>().find("r_{n+1}") != std::string::npos)
            flagged = true;
    CHECK(flagged);
}

TEST_CASE("lt1d: weak well has zero bound and empty spectrum") {
    auto r = run_cli("lt1d --potential well:depth=2.0,l=1,w=1,c=0.5 --sigma 1.5",
                     tmp_prefix("lt1d_weak"));
    REQUIRE(r.exit_code == 0);
    std::vector<std::string> header;
    auto rows = parse_csv(r.csv, &header);
    REQUIRE(rows.size() == 1);
    const auto& row = rows[0];
    CHECK(row[0] == doctest::Approx(2.0));      // A = l Int V
    CHECK(row[1] == 0.0);                        // bound
    CHECK(row[4] == 0.0);                        // n_levels
}

TEST_CASE("lt1d: solver Riesz mean dominated by the bound, small residual") {
    auto r = run_cli("lt1d --potential well:depth=40,l=1,w=0.6,c=0.5 --sigma 1.5",
                     tmp_prefix("lt1d"));
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.csv);
    REQUIRE(rows.size() == 1);
    const auto& row = rows[0];
    CHECK(row[3] <= row[1]);                     // riesz_solver <= bound
    CHECK(row[1] <= row[2]);                     // bound <= plain_lt
    CHECK(row[9] <= 1e-4);                       // gap identity residual
    CHECK(row[7] >= row[8] * (1.0 - 1e-9));      // gap >= gap_bound
}

TEST_CASE("lt1d: unreadable potential file exits 3") {
    auto r = run_cli("lt1d --potential file:/nonexistent/path.dat", tmp_prefix("lt1d_io"));
    CHECK(r.exit_code == 3);
}

TEST_CASE("verify: dominance flags on a small grid") {
    auto r = run_cli("verify --domain horn --nu 2 --sigma 1.5 --lambda 10:14:log2",
                     tmp_prefix("verify"));
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.csv);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row[3] == 1.0);   // dominance
        CHECK(row[1] > 0.0);    // empirical
        CHECK(row[1] <= row[2]);
    }
}

TEST_CASE("verify: resolution guard exits 4") {
    auto r = run_cli("verify --domain horn --nu 2 --sigma 1.5 --lambda 50:50:lin1 --h 0.5",
                     tmp_prefix("verify_guard"));
    CHECK(r.exit_code == 4);
}

TEST_CASE("lt2d: agreement column and slope") {
    auto r = run_cli("lt2d --alpha 0.25 --sigma 1.5 --lambda 1:100:log6 --quad-tol 1e-8",
                     tmp_prefix("lt2d"));
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.csv);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) CHECK(row[3] <= 1e-6);
    const double slope = r.json["tolerances"]["log_slope"].get<double>();
    const double expected = r.json["tolerances"]["log_slope_expected"].get<double>();
    CHECK(slope == doctest::Approx(expected).epsilon(0.01 / expected));
}

TEST_CASE("lt2d: alpha outside the admissible range flags but does not crash") {
    auto r = run_cli("lt2d --alpha 0.45 --sigma 1.5 --lambda 1:10:log3",
                     tmp_prefix("lt2d_flag"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.json["flags"].size() > 0);
}

TEST_CASE("usage errors exit 2") {
    auto r = run_cli("bound horn --definitely-not-a-flag 1", tmp_prefix("usage"));
    CHECK(r.exit_code == 2);
    auto r2 = run_cli("", tmp_prefix("usage2"));
    CHECK(r2.exit_code == 2);  // missing subcommand
}

TEST_SUITE_END();
