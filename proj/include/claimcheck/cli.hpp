#pragma once

#include <iosfwd>

namespace claimcheck::cli {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Runs the claimcheck command line. Never throws; errors become exit codes.
int run(int argc, const char* const argv[], std::ostream& out, std::ostream& err);

} // namespace claimcheck::cli
