#pragma once

#include <iosfwd>

namespace bowl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitGuard = 2;

/// Entry point of the `bowl` tool; regular output goes to `out`, diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace bowl::cli
