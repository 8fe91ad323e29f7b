#pragma once

#include <iosfwd>

namespace varbound::cli {

// Full command-line front end.  Writes results to `out` and diagnostics to
// `err`; returns the process exit code:
//   0 success, 1 usage or parse error, 2 numerical failure,
//   3 reproduction tolerance failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace varbound::cli
