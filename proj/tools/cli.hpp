#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace affine_cells::cli {

enum ExitCode { ok = 0, invalid_input = 1, limit_exceeded = 2, disagreement = 3 };

// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace affine_cells::cli
