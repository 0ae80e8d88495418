#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace roc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

// Runs the `roc` command line. `args` excludes the program name. Results
// go to `out`, diagnostics to `err`. Returns 0 on success, 1 when the
// inputs have validation findings, 2 on usage, parse or storage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roc
