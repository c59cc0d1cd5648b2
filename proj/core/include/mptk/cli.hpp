#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mptk {

/// Runs one mptk invocation (args exclude the program name) and writes the
/// report to `out` (or the --out file) and diagnostics to `err`.  Returns 0
/// when every applicable bound is satisfied, 1 on a bound violation, and 2
/// on usage, parse, or validation errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mptk
