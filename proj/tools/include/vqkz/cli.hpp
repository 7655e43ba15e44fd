#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vqkz {

// Dispatches one command line (without the program name) and returns the
// process exit code.  Structured output (bases, CSV, curve data) goes to
// `out` or to --out files; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vqkz
