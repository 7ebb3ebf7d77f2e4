#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pacube::cli {

// Dispatches one subcommand invocation (argv without the program name).
// Machine-readable output goes to `out`, diagnostics to `err`.
// Exit codes: 0 pass/empty, 1 witnesses found, 2 usage or data error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace pacube::cli
