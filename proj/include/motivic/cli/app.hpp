#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace motivic::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_verify_failed = 1,
  exit_unsupported = 2,
  exit_parse_error = 3,
};

// Commands: eval, series, measure, integrate, verify. Machine output is one
// JSON document on `out` (a text table with --pretty); logs go to `err`.
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace motivic::cli
