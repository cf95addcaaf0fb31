#pragma once

// Command dispatch for the groupoidrep tool. Exit codes: 0 when every
// checked property holds, 1 on a property failure, 2 on unusable input.

#include "groupoidrep/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace groupoidrep {

struct RunConfig {
    std::string command;
    std::string input;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::string format = "json";  // json | text
    std::string out;              // empty: standard output
    std::string rep;              // representation name, where one is used
    std::string rep2;
    std::string bibundle;
};

const std::vector<std::string>& commands();

struct RunResult {
    int status = 0;
    json report;
};

/// Never throws; errors become status 2 (input) or 1 (property) with an
/// "error" entry in the report.
RunResult run(const RunConfig& config);

/// run() then writes the report in the requested format.
int run_and_write(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace groupoidrep
