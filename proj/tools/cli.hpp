#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace partsample::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitPrecondition = 4;
inline constexpr int kExitBudget = 5;
inline constexpr int kExitRejected = 6;

inline constexpr int kSchemaVersion = 1;

/// Environment variable that, when set to anything but "" or "0", makes
/// --seed mandatory for randomized subcommands.
inline constexpr const char* kCiEnvVar = "PARTSAMPLE_CI";

/// Runs the command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace partsample::cli
