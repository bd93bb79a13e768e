#pragma once

#include <iosfwd>

namespace stepper::cli {

enum ExitCode { normal_form = 0, failure = 1, truncated = 2 };

/// Entry point of the `stepper` tool: `steps`, `provenance` and `frames`
/// subcommands.  Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stepper::cli
