#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace treecut {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitAcceptanceFailure = 2;

// Runs one subcommand (constants, counts, probs, moments, limits, simulate,
// verify). Results go to `out` unless --out names a file; diagnostics go to `err`.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// Same, with args excluding the program name.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treecut
