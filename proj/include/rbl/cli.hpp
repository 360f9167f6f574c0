#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbl {

/// Entry point of the `rbl` tool; args[0] is the program name.
/// Subcommands: run, validate, presets.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rbl
