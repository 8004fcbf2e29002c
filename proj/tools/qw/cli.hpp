#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qw::cli {

enum ExitCode : int { ok = 0, invariant_failure = 1, usage = 2, resource = 3 };

/// Runs one command line (args[0] is the program name). Text output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qw::cli
