#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ukoszul::cli {

enum ExitCode : int { holds = 0, fails = 1, invalid_input = 2, resource_limit = 3 };

/// Runs one command line (without the program name). The report goes to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ukoszul::cli
