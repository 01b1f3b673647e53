#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace fractalc::cli {

enum ExitCode : int {
    ok = 0,
    usage = 2,
    solver_failure = 3,
    budget_exceeded = 4,
};

/// Runs the command line; args[0] is the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fractalc::cli
