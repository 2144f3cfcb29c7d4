#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or input error,
// 2 solver non-convergence, 3 verification failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace hopfsol::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kSolverFailure = 2, kVerifyFailure = 3 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hopfsol::cli
