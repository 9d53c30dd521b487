#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace welfare::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one subcommand. `args` excludes the program name. Reports go to `out`
/// (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace welfare::cli
