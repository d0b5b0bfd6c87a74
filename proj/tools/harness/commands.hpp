#pragma once

// The slsched command line, callable in-process.
//
// Exit codes: 0 success, 1 method failure or infeasibility, 2 usage or
// parse error.

#include <ostream>
#include <string>
#include <vector>

namespace slsched::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slsched::harness
