#pragma once

/// \file
/// Command-line front end. Subcommands: norm, apply, check, region, sweep,
/// probe, suite. Every flag may also come from a TOML/INI file given with
/// --config (subcommand flags under a [subcommand] section).
///
/// Exit status: 0 success, 1 invalid arguments, 2 computation error, 3 suite
/// failure.

#include <ostream>
#include <string>
#include <vector>

namespace hmk {

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmk
