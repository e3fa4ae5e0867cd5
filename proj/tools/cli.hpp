#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace erdoslab::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kFailure = 1, kInvalidArgs = 2, kBudget = 3 };

// Runs one subcommand. argv excludes the program name. CSV goes to --out
// (or `out` when --out is absent or "-"); the run manifest goes to `out`,
// or to `err` when `out` already carries the CSV.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace erdoslab::cli
