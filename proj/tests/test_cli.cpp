#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynrx/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace dynrx;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "dynrx");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("trivial fusion matrix is the identity") {
    Run r = run({"compute", "--algebra", "sl2", "--reps", "0", "0", "--object", "fusion"});
    REQUIRE(r.code == kOk);
    json j = json::parse(r.out);
    json m = j["results"][0]["matrix"];
    CHECK(m["rows"] == 1);
    CHECK(m["cols"] == 1);
    CHECK(m["entries"][0][0] == "1");
    CHECK(j["config"]["algebra"] == "sl2");
}

TEST_CASE("matrix schema and reproducibility") {
    std::vector<std::string> args = {"compute", "--reps", "1/2", "1/2", "--q", "2", "--samples", "1", "--seed", "7"};
    Run a = run(args), b = run(args);
    REQUIRE(a.code == kOk);
    CHECK(a.out == b.out);
    json m = json::parse(a.out)["results"][0]["matrix"];
    CHECK(m["rows"] == 4);
    CHECK(m["basis"].size() == 4);
    CHECK(m["entries"].size() == 4);
    CHECK(m["entries"][0][0].is_string());
    CHECK(json::parse(a.out)["config"]["lambda"]["seed"] == 7);
    Run c = run({"compute", "--reps", "1/2", "1/2", "--q", "2", "--seed", "8"});
    CHECK(c.out != a.out);
}

TEST_CASE("symbolic entries are rational-function objects") {
    Run r = run({"compute", "--algebra", "gl2", "--object", "exchange", "--symbolic"});
    REQUIRE(r.code == kOk);
    json e = json::parse(r.out)["results"][0]["matrix"]["entries"][1][2];
    CHECK(e.contains("num"));
    CHECK(e.contains("den"));
    CHECK(e.contains("text"));
    CHECK(json::parse(r.out)["results"][0]["lambda"] == "symbolic");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"compute", "--algebra", "sl3"}).code == kUsage);
    CHECK(run({"compute", "--reps", "1/3"}).code == kUsage);
    CHECK(run({"compute", "--algebra", "gl3", "--symbolic"}).code == kUsage);
    CHECK(run({"compute", "--algebra", "gl2", "--lambda", "1"}).code == kUsage);
    CHECK(run({"verify", "--suites", "nonsense"}).code == kUsage);
    CHECK(run({}).code == kUsage);
    // The half-spin exchange matrix needs q^{1/2}.
    CHECK(run({"compute", "--q", "2", "--object", "exchange"}).code == kUsage);
    CHECK(run({"--help"}).code == kOk);
}

TEST_CASE("singular lambda exits with 3") {
    Run r = run({"compute", "--q", "4", "--lambda", "1/4", "--object", "exchange"});
    CHECK(r.code == kSingular);
    CHECK(!r.err.empty());
}

TEST_CASE("verify reports") {
    Run r = run({"verify", "--suites", "qdyb,hecke", "--algebra", "gl3", "--samples", "3"});
    REQUIRE(r.code == kOk);
    json j = json::parse(r.out);
    CHECK(j["pass"] == true);
    REQUIRE(j["reports"].size() == 2);
    for (auto& rep : j["reports"]) {
        CHECK(rep.contains("suite"));
        CHECK(rep.contains("config"));
        CHECK(rep["pass"] == true);
        CHECK(rep["failures"].is_array());
    }
    CHECK(j["reports"][0]["suite"] == "qdyb");
    CHECK(j["reports"][0]["samples"] == 3);
}

TEST_CASE("classical Hecke eigenvalues") {
    Run r = run({"verify", "--suites", "hecke", "--q", "classical"});
    REQUIRE(r.code == kOk);
    json e = json::parse(r.out)["reports"][0]["eigenvalues"];
    CHECK(e == json::array({"1", "-1"}));
}

TEST_CASE("verify output does not depend on the thread count") {
    std::vector<std::string> args = {"verify", "--suites", "cocycle,k-matrix,two-point,rll", "--q", "4", "--samples", "2"};
    setenv("DYNRX_THREADS", "1", 1);
    Run a = run(args);
    setenv("DYNRX_THREADS", "4", 1);
    Run b = run(args);
    unsetenv("DYNRX_THREADS");
    CHECK(a.code == kOk);
    CHECK(a.out == b.out);
}

TEST_CASE("skipped suites pass with a reason") {
    Run r = run({"verify", "--suites", "abrr-agreement", "--q", "classical"});
    CHECK(r.code == kOk);
    json rep = json::parse(r.out)["reports"][0];
    CHECK(rep["skipped"] == true);
    CHECK(rep["reason"].is_string());
}

TEST_CASE("6j table as CSV written to a file") {
    std::string path = "test_cli_sixj.csv";
    Run r = run({"compute", "--object", "sixj-table", "--format", "csv", "--q", "4", "--max-spin", "1/2", "-o", path});
    REQUIRE(r.code == kOk);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "a,b,n,c,k,j,value");
    CHECK(first == "0,0,0,0,0,0,1");
    std::remove(path.c_str());
}

TEST_CASE("sl2 triples with mixed spins pass every suite") {
    Run r = run({"verify", "--q", "4", "--reps", "1", "1/2", "--samples", "2", "--max-spin", "1/2"});
    CHECK(r.code == kOk);
    CHECK(json::parse(r.out)["reports"].size() == kAllSuites.size());
}
