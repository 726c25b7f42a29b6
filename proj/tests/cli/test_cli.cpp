#include "cli_app.hpp"
#include "report.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace mincollector::cli;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_tool(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "json"});
    const Outcome o = run_tool(args);
    REQUIRE(o.code == kExitOk);
    return nlohmann::json::parse(o.out);
}

double number(const nlohmann::json& row, const char* key) { return std::stod(row.at(key).get<std::string>()); }

}  // namespace

TEST_CASE("json reports carry the schema envelope") {
    const auto doc = run_json({"constants", "--p", "2"});
    CHECK(doc["toolkit"] == "mincollector");
    CHECK(doc["schema_version"] == kSchemaVersion);
    CHECK(doc["command"] == "constants");
    REQUIRE(doc["rows"].size() == 1);
    const auto& row = doc["rows"][0];
    CHECK(row["c_p"].get<std::string>().rfind("-0.34657359027997265470861606072908828403775", 0) == 0);
    CHECK_THAT(number(row, "a_p"), WithinAbs(0.68402803901182358714, 1e-15));
}

TEST_CASE("exact reports") {
    auto row = run_json({"exact", "--N", "1", "--p", "3"})["rows"][0];
    CHECK(row["mean"] == "1");
    CHECK(row["mode"] == "exact-rational");

    row = run_json({"exact", "--N", "2", "--p", "2", "--second-moment"})["rows"][0];
    CHECK_THAT(number(row, "mean"), WithinAbs(7.0 / 3.0, 1e-12));
    CHECK_THAT(number(row, "variance"), WithinAbs(number(row, "second_moment") - 49.0 / 9.0, 1e-10));

    row = run_json({"exact", "--N", "100", "--p", "1", "--mode", "float"})["rows"][0];
    CHECK(row["mode"] == "high-precision-float");
    CHECK_THAT(number(row, "mean"), WithinAbs(518.73775176396, 1e-9));
}

TEST_CASE("closed form agrees with the series") {
    const auto row = run_json({"closed-form-p2", "--N", "12"})["rows"][0];
    CHECK(std::abs(number(row, "delta")) <= 2e-12);
}

TEST_CASE("simulation brackets the exact mean") {
    const auto row = run_json({"simulate", "--N", "2", "--p", "2", "--reps", "200000", "--seed", "1"})["rows"][0];
    CHECK(number(row, "ci95_low") <= 7.0 / 3.0);
    CHECK(number(row, "ci95_high") >= 7.0 / 3.0);
    const auto again = run_json({"simulate", "--N", "2", "--p", "2", "--reps", "200000", "--seed", "1"})["rows"][0];
    CHECK(row == again);
}

TEST_CASE("other subcommands produce rows") {
    CHECK(run_json({"threshold", "--N", "1000"})["rows"][0]["c_N"] == "8119");
    CHECK(run_json({"stirling", "--N", "5", "--k", "3", "--regime"})["rows"][0]["regime"] == "other");
    CHECK(run_json({"stirling", "--N", "30", "--k", "193"})["rows"][0]["regime"] == "erdos_szekeres");
    CHECK(run_json({"louchard", "--k", "1000", "--alpha", "0.6"})["rows"][0]["N"] == "936");
    CHECK(run_json({"asym", "--N", "50", "--p", "1"})["rows"][0].contains("exact_mean"));
    CHECK(run_json({"altsum", "--n", "64", "--expansion"})["rows"][0].contains("gap"));
    const auto scan = run_json({"constants", "scan", "--p-max", "16"});
    CHECK(scan["rows"].size() == 16);
    CHECK(scan["summary"]["conjecture_holds"] == "true");
}

TEST_CASE("csv and text formats") {
    const Outcome csv = run_tool({"--format", "csv", "threshold", "--N", "10"});
    REQUIRE(csv.code == kExitOk);
    CHECK(csv.out.find("N,c_N\n10,26\n") != std::string::npos);
    const Outcome text = run_tool({"threshold", "--N", "10"});
    CHECK(text.out.find("c_N") != std::string::npos);
}

TEST_CASE("output file") {
    const std::string path = "test_cli_output.json";
    const Outcome o = run_tool({"--format", "json", "--output", path, "threshold", "--N", "3"});
    REQUIRE(o.code == kExitOk);
    CHECK(o.out.empty());
    std::ifstream in(path);
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["rows"][0]["c_N"] == "2");
    std::remove(path.c_str());
}

TEST_CASE("exit codes") {
    Outcome o = run_tool({});
    CHECK(o.code == kExitUsage);
    CHECK(o.err.rfind("error: usage:", 0) == 0);

    o = run_tool({"exact", "--N", "0", "--p", "1"});
    CHECK(o.code == kExitUsage);

    o = run_tool({"simulate", "--N", "2", "--p", "1", "--reps", "1", "--seed", "3"});
    CHECK(o.code == kExitUsage);

    o = run_tool({"stirling", "--N", "10", "--k", "9"});
    CHECK(o.code == kExitOk);

    o = run_tool({"exact", "--N", "100", "--p", "5", "--budget", "10"});
    CHECK(o.code == kExitBudget);
    CHECK(o.err.rfind("error: budget:", 0) == 0);
    CHECK(std::count(o.err.begin(), o.err.end(), '\n') == 1);

    o = run_tool({"louchard", "--k", "1000", "--alpha", "0.4"});
    CHECK(o.code == kExitUsage);

    o = run_tool({"--help"});
    CHECK(o.code == kExitOk);
}
