#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace witness_forge::cli {

/// Exit codes: 0 completed, 1 completed with a documented negative finding,
/// 2 input error.
enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2 };

/// Runs the command line (without the program name). JSON and CSV go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Accepts plain decimals plus pi forms such as "-pi/3" and "2*pi".
double parse_number(const std::string &token);

}  // namespace witness_forge::cli
