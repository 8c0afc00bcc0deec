#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qes::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadArguments = 2;
inline constexpr int kExitIo = 3;

/// Runs the `qes` command line on args (without the program name).
/// Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qes::cli
