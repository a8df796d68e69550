#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reconf::cli {

// Exit codes: 0 success, 1 usage or input error, 2 infeasible problem.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInfeasible = 2;

// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reconf::cli
