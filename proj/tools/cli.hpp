#pragma once

#include <iosfwd>

namespace bloch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitArgument = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitComparison = 3;

/// Runs one bloch-atlas command. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bloch::cli
