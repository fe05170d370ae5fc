// cli.hpp — the `fano` command line as a callable function.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fano {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // integration failure or a record failing its checks
inline constexpr int kExitInvalid = 2;  // bad flags or parameters
inline constexpr int kExitSingular = 3; // singular generator
inline constexpr int kExitIo = 4;       // unreadable config, unwritable output

// Runs one subcommand. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fano
