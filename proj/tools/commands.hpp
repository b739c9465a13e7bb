#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace protek::cli {

/// Runs the command line given as argv-style words (without the program
/// name). Normal output goes to out, diagnostics to err. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace protek::cli
