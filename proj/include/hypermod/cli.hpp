#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypermod {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitResourceLimit = 2;

/// Runs one command line (without the program name). Output goes to out,
/// diagnostics to err. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypermod
