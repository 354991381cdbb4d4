#pragma once

// Command-line front end. The executable is a thin wrapper over run_cli so
// tests can drive every subcommand in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace ahg {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kVersion = "0.3.0";

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ahg
