#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace efrac {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitResource = 2;

/// Runs the command line `efrac <args...>` writing tables to out and
/// diagnostics to err. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace efrac
