#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clusterdouble {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailed = 1;
inline constexpr int kExitMalformedInput = 2;

// Runs the command-line tool on args (without the program name). Results go
// to out, diagnostics and timings to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clusterdouble
