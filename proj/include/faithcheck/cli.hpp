#pragma once

#include <string>
#include <vector>

namespace faithcheck {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Dispatches one CLI invocation (argv without the program name).
/// Exit codes: 0 success, 1 usage or parse error, 2 input invariant
/// violation, 3 search exhausted without a result. Error paths write nothing
/// to stdout.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace faithcheck
