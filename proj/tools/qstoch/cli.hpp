#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qstoch::cli {

/// Exit codes of the qstoch tool.
enum Exit : int {
  kTrue = 0,         // verified true / constructed
  kFalse = 1,        // verified false / nothing found
  kUsage = 2,        // bad arguments, unreadable or malformed input
  kNumerical = 3,    // numerical precondition failed or internal inconsistency
};

/// Runs the tool on `args` (without the program name), writing the report to
/// `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qstoch::cli
