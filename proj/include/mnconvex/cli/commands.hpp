#ifndef MNCONVEX_CLI_COMMANDS_HPP
#define MNCONVEX_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace mnconvex::cli
{

// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    // Certificate inapplicable, verification inconclusive or a repro check failed.
    exit_not_established = 1,
    exit_usage = 2,
    exit_domain = 3,
    exit_refuted = 4,
};

// Runs the command line; args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace mnconvex::cli

#endif
