#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace collabmetrics::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;    // I/O or data failure
inline constexpr int kExitUsage = 2;      // unknown subcommand/flag, bad flag value
inline constexpr int kExitTolerance = 3;  // validate: fitted exponents off theory

/// Runs one CLI invocation (args exclude the program name) and returns the
/// exit status. All file outputs land under the run's --output-dir together
/// with a manifest of the effective parameters.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace collabmetrics::cli
