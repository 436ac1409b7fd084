#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dualcalc {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; in json mode errors are reported on `out` as well.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace dualcalc
