#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "debx/cli.hpp"
#include "debx/report.hpp"
#include "doctest.h"
#include "nlohmann/json.hpp"

using namespace debx;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = cli::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"optimal", "--kind", "nonsense"}).code == 2);
    CHECK(run({"sample", "--func", "Q"}).code == 2);
    CHECK(run({"sample", "--step", "0"}).code == 2);
    CHECK(run({"sweep", "--steps", "1"}).code == 2);
    const auto r = run({"verify", "--suite", "kernel", "--tol", "garbage"});
    CHECK(r.code == 2);
    CHECK(!r.err.empty());
}

TEST_CASE("help is served on stdout with exit code 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("optimal") != std::string::npos);
    CHECK(r.out.find("sample") != std::string::npos);
}

TEST_CASE("optimal prints the closed form") {
    const auto r = run({"optimal", "--a", "1"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(!lines.empty());
    REQUIRE(lines[0].rfind("closed_form ", 0) == 0);
    const double v = std::stod(lines[0].substr(12));
    const double direct = std::numbers::pi / (std::numbers::pi - std::tanh(std::numbers::pi));
    CHECK(std::abs(v - direct) < 1e-12);

    // de-branges with delta != 1 has no agreed measure.
    CHECK(run({"optimal", "--kind", "de-branges", "--delta", "2"}).code == 2);
    CHECK(run({"optimal", "--kind", "de-branges"}).code == 0);
}

TEST_CASE("sample emits deterministic CSV") {
    const std::vector<std::string> args = {"sample", "--func", "weight", "--a",   "1",
                                           "--from", "-1",     "--to",   "1",     "--step",
                                           "0.5"};
    const auto r1 = run(args);
    REQUIRE(r1.code == 0);
    const auto r2 = run(args);
    CHECK(r1.out == r2.out);  // byte-for-byte

    const auto lines = lines_of(r1.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "x,value");
    CHECK(lines[1].rfind("-1,", 0) == 0);
    CHECK(lines[3].rfind("0,", 0) == 0);  // the origin is snapped clean
    CHECK(lines[5].rfind("1,", 0) == 0);

    // Symmetry of the weight shows up in the emitted values.
    const auto first = lines[1].substr(lines[1].find(',') + 1);
    const auto last = lines[5].substr(lines[5].find(',') + 1);
    CHECK(first == last);
}

TEST_CASE("sample emits parseable JSON") {
    const auto r = run({"sample", "--func", "K-diag", "--a", "2", "--from", "0", "--to", "2",
                        "--step", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto root = nlohmann::json::parse(r.out);
    CHECK(root["func"] == "K-diag");
    CHECK(root["a"] == 2.0);
    REQUIRE(root["samples"].size() == 3);
    CHECK(root["samples"][0][0] == 0.0);
    CHECK(root["samples"][2][0] == 2.0);
    const double k0 = root["samples"][0][1].get<double>();
    CHECK(k0 > 0.0);
}

TEST_CASE("sample writes to a file and reports I/O failures") {
    const std::string path = "cli_sample_test_output.csv";
    const auto r = run({"sample", "--func", "B", "--from", "0", "--to", "1", "--step", "0.5",
                        "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,value");
    in.close();
    std::remove(path.c_str());

    CHECK(run({"sample", "--func", "B", "--out", "no_such_dir/x.csv"}).code == 3);
}

TEST_CASE("sweep emits the closed-form columns with the product check at one") {
    const std::vector<std::string> args = {"sweep", "--a-min", "0.5", "--a-max", "2",
                                           "--steps", "4"};
    const auto r = run(args);
    REQUIRE(r.code == 0);
    CHECK(run(args).out == r.out);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "a,closed_form_heaviside,K_diag_at_0,product_check");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto last_comma = lines[i].rfind(',');
        const double product = std::stod(lines[i].substr(last_comma + 1));
        CHECK(std::abs(product - 1.0) < 1e-12);
    }
}

TEST_CASE("verify produces a sorted JSON report that round-trips") {
    const auto r = run({"verify", "--suite", "kernel", "--a", "1"});
    REQUIRE(r.code == 0);
    const auto report = VerificationReport::from_json(r.out);
    CHECK(report.overall_pass);
    CHECK(!report.entries.empty());
    for (std::size_t i = 1; i < report.entries.size(); ++i) {
        CHECK(report.entries[i - 1].check_name <= report.entries[i].check_name);
    }
    CHECK(report.metadata.at("suite") == "kernel");
    CHECK(report.to_json() == r.out);  // serialization round-trip
}

TEST_CASE("verify exits nonzero when a tolerance override fails a check") {
    const auto r =
        run({"verify", "--suite", "kernel", "--tol", "kernel_weight_identity=1e-30"});
    CHECK(r.code == 1);
    const auto report = VerificationReport::from_json(r.out);
    CHECK(!report.overall_pass);
}
