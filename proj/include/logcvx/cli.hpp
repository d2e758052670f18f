#pragma once

#include <ostream>

namespace logcvx {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDivergence = 3;
inline constexpr int kExitPartial = 4;

/// Subcommands eval, report and paper-checks. Results go to `out` (or the
/// --out file), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace logcvx
