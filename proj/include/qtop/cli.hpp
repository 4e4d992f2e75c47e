#pragma once
// The qtop command line. Reports are `key = value` lines on `out`;
// diagnostics go to `err`. Exit codes: 0 success, 1 usage or input error,
// 2 internal invariant violation.

#include <ostream>
#include <string>
#include <vector>

namespace qtop {

// `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtop
