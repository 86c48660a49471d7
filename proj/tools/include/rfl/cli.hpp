#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rfl::cli {

enum ExitCode : int { ok = 0, failed = 1, config_error = 2, on_support = 3 };

// Runs the command line (args excludes the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rfl::cli
