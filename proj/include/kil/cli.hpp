#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kil {

// Parses and dispatches a full command line. Returns the process exit code:
// 0 success, 2 for SearchExhausted/BudgetExceeded, 1 for anything invalid.
// Artifacts go to --out (atomic) or to `out` when no path was given; errors
// are machine-readable JSON objects on `err`.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kil
