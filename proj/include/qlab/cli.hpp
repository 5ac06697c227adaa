#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlab {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// Runs `qlab <command> ...` with args excluding the program name. Output goes
/// to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlab
