#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperstretch {

// Runs the command line given argv-style arguments (without the program
// name). Returns the process exit code: 0 success, 1 validation error,
// 2 internal assertion failure.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperstretch
