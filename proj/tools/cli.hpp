#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsync::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kNegative = 2,  // e.g. no synchronizing word, circuit mismatch
  kCapacity = 3,
};

/// Runs the tool with `args` (without the program name). Primary output goes
/// to `out` unless redirected with --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsync::cli
