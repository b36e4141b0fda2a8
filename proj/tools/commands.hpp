#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nvdressed::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2 };

/// Runs one subcommand. args excludes the program name. Normal output and
/// help go to out; diagnostics and the usage synopsis go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nvdressed::cli
