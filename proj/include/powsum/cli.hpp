#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace powsum::cli {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the CLI on args (without the program name). Results go to out, or to
/// the file named by --out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace powsum::cli
