#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace congrue::cli {

enum ExitCode : int { Affirmative = 0, Negative = 1, UsageError = 2, NotApplicable = 3 };

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace congrue::cli
