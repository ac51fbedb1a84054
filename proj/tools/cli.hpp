#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace macroq::cli {

/// Runs the command line `args` (args[0] is the program name). JSON and CSV
/// go to `out`, diagnostics to `err`. Returns the process exit code:
/// 0 success, 1 numeric or I/O failure (or a failed check), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace macroq::cli
