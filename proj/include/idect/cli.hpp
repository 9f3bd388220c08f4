#pragma once

#include <iosfwd>
#include <string>

namespace idect {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;  // bad arguments, problem file, or point
inline constexpr int kExitSolver = 2;

/// Runs `idect solve|converge|spy|eval ...` with the given argument vector
/// (argv[0] is the program name) and returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 17 significant digits, '.' decimal separator.
std::string format_number(double v);

}  // namespace idect
