#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace debx::cli {

/// Entry point of the command line tool, separated from main() so tests can
/// drive it with captured streams. `args` excludes the program name.
/// Exit codes: 0 success, 1 verification failure or numeric error, 2 usage
/// error, 3 I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace debx::cli
