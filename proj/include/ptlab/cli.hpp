#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptlab::cli {

/// Exit status of a subcommand.
enum ExitCode : int { success = 0, configuration_error = 1, numerical_failure = 2 };

/// Runs `ptlab <subcommand> [options]`; args excludes the program name.
/// Subcommands: spectrum, kep, bound-states, metric, positivity, pseudometric, presets.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptlab::cli
