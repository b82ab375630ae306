#pragma once

#include "dynrx/dynrep.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace dynrx {

// Exit codes of the command-line tool.
enum ExitCode { kOk = 0, kMathFailure = 1, kUsage = 2, kSingular = 3 };

struct RunConfig {
    std::string command;  // "compute" or "verify"
    std::string algebra = "sl2";
    std::string q = "2";
    std::vector<std::string> reps;
    bool symbolic = false;
    int samples = 1;
    std::uint64_t seed = 1;
    int bitsize = 16;
    std::vector<std::string> lambda;  // explicit coordinates instead of random samples
    std::vector<std::string> suites;
    std::string object = "fusion";
    std::string format = "json";
    std::string output;
    std::string max_spin = "1";  // 6j tables and the sixj suite

    nlohmann::json to_json() const;
};

extern const std::vector<std::string> kAllSuites;

// Matrix JSON schema {"rows", "cols", "basis", "entries"}; RatFunc entries as {"num", "den", "text"}.
nlohmann::json matrix_json(const RMat& m, const std::vector<std::string>& basis);
nlohmann::json matrix_json(const Matrix<RatFunc>& m, const std::vector<std::string>& basis);

// Runs one verification suite; the report follows {"suite", "config", "pass", "failures", ...}.
nlohmann::json run_suite(const std::string& suite, const RunConfig& cfg);

int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and dispatches; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dynrx
