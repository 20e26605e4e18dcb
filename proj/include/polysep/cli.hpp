#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polysep {

// Runs the CLI with `args` (not including the program name), writing normal
// output to `out` and diagnostics to `err`. Returns the process exit code:
// 0 success, 2 usage/domain error, 3 numerical non-convergence.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace polysep
