#pragma once

#include <ostream>

namespace kpz {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitResolution = 2;
inline constexpr int kExitCriteriaFailed = 3;
inline constexpr int kExitUsage = 64;

/// Command-line entry point.  Reports go to `out` (or --out), diagnostics
/// to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kpz
