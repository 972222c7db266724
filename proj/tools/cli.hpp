#pragma once

#include <iosfwd>

namespace recip::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kBudget = 3 };

/// Runs one command line; the JSON summary goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace recip::cli
