#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mincollector::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPrecision = 3;
inline constexpr int kExitBudget = 4;

// Runs the tool on `args` (without the program name). Reports go to `out`
// unless --output names a file; failures are one line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mincollector::cli
