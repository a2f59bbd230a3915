#pragma once

#include <iosfwd>

namespace thermodisp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitPrecondition = 3;

/// Entry point of the `thermodisp` command line tool. Subcommands: presets,
/// validate, cutoffs, sweep, bandgap.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thermodisp
