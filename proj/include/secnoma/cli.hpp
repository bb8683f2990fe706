#pragma once

#include <iosfwd>

namespace secnoma {

inline constexpr int kExitFeasible = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;

/// Entry point of the `secnoma` command. Writes results to `out` and
/// diagnostics to `err`; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace secnoma
