#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hyperdeg/cli.hpp"
#include "hyperdeg/json_io.hpp"

using namespace hyperdeg;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kReg6 = R"({"n":6,"r":3,"degrees":[5,5,5,5,5,5]})";

}  // namespace

TEST_CASE("exact counts print as decimal integers") {
    const Result r = call({"count", "--input", kReg6, "--method", "exact"});
    CHECK(r.code == 0);
    CHECK(r.out == "1044\n");
    CHECK(r.err.rfind("# invocation: hyperdeg count", 0) == 0);
}

TEST_CASE("parity violations exit with code 2 and name the condition") {
    const Result r = call({"solve", "--input", R"({"n":6,"r":3,"degrees":[5,5,5,5,5,4]})"});
    CHECK(r.code == 2);
    CHECK(r.err.find("parity") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("malformed input and unknown flags exit with code 2") {
    CHECK(call({"solve", "--input", "{not json"}).code == 2);
    CHECK(call({"solve", "--input", R"({"n":6,"r":3})"}).code == 2);
    CHECK(call({"solve", "--bogus"}).code == 2);
    CHECK(call({"count", "--input", kReg6, "--method", "nonsense"}).code == 2);
    CHECK(call({"solve", "--input", "/nonexistent/file.json"}).code == 2);
}

TEST_CASE("solver failures exit with code 3 and budget failures with code 4") {
    CHECK(call({"solve", "--input", R"({"n":6,"r":3,"degrees":[0,6,6,6,6,6]})"}).code == 3);
    setenv("HYPERDEG_BUDGET", "10", 1);
    const Result r = call({"count", "--input", kReg6, "--method", "exact"});
    unsetenv("HYPERDEG_BUDGET");
    CHECK(r.code == 4);
}

TEST_CASE("near-regular estimate emits the LogEstimate JSON shape") {
    const Result r = call({"count", "--input", kReg6, "--method", "near-regular", "--json"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.contains("ln"));
    CHECK(j.contains("log10"));
    CHECK(j["method"] == "near-regular");
    CHECK(j["ln"].get<double>() == doctest::Approx(7.426810420097436).epsilon(1e-13));
    // hypothesis warnings go to stderr only
    CHECK(r.err.find("warning: hypothesis main_inequality") != std::string::npos);
}

TEST_CASE("floating output uses 17 significant digits") {
    Json j;
    j["x"] = 0.1;
    CHECK(dump(j) == R"({"x":0.10000000000000001})");
}

TEST_CASE("stdout is identical across thread counts") {
    for (const auto& base : std::vector<std::vector<std::string>>{
             {"count", "--input", kReg6, "--method", "general"},
             {"solve", "--input", R"({"n":8,"r":3,"degrees":[10,9,9,9,9,8,9,9]})", "--dump-field"},
             {"models", "--input", kReg6}}) {
        std::string first;
        for (const char* t : {"1", "2", "0"}) {
            auto args = std::vector<std::string>{"--threads", t};
            args.insert(args.end(), base.begin(), base.end());
            const Result r = call(args);
            CHECK(r.code == 0);
            if (first.empty())
                first = r.out;
            else
                CHECK(r.out == first);
        }
    }
}

TEST_CASE("sample writes a CSV with a d_1..d_n header") {
    const std::string path = "sample_test_output.csv";
    const Result r = call({"sample", "-n", "5", "-r", "3", "-m", "4", "--seed", "11", "--count", "3", "--csv", path});
    CHECK(r.code == 0);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "d_1,d_2,d_3,d_4,d_5");
    int rows = 0;
    for (std::string line; std::getline(f, line);) ++rows;
    CHECK(rows == 3);
    std::remove(path.c_str());
}

TEST_CASE("selftest suites report success") {
    CHECK(call({"selftest", "identities", "--trials", "3"}).code == 0);
    CHECK(call({"selftest", "bounds", "--trials", "10"}).code == 0);
}
