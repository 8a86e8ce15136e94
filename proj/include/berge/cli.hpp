#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace berge::cli {

/// Exit codes: 0 all pass/verified, 1 any fail or contradiction, 2 input
/// error, 3 warn-only outcomes under --strict-warn.
inline constexpr int exit_ok = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_warn = 3;

/// Runs one command (check | solve | verify | ordinal-demo) with CLI-style
/// arguments, writing the report to `out` and diagnostics to `err`.
/// Never throws; all outcomes map to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace berge::cli
