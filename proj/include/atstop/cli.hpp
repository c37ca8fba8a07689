#pragma once

#include <iosfwd>

namespace atstop {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 1;
inline constexpr int inconclusive = 2;
inline constexpr int checks_failed = 3;
}  // namespace exit_code

/// Command-line entry point: solve, value, verify, appell, plot-data.
/// Results go to `out` (or the --out file), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace atstop
