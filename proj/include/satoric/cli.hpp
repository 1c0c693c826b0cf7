#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace satoric::cli {

enum ExitCode : int {
    Holds = 0,
    Fails = 1,
    InputError = 2,
};

/**
 * Runs one command line (args[0] is the program name). Human-readable lines start
 * with "# "; every other line of `out` is a machine line key=value in fixed order.
 * Diagnostics for exit code 2 go to `err`.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace satoric::cli
