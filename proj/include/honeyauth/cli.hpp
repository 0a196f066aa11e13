#pragma once

#include <iosfwd>

namespace honeyauth {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Entry point for the honeyauth tool. Machine-readable output goes to out,
// diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace honeyauth
