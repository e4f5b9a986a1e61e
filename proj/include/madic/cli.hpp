#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace madic {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

// Runs one subcommand. `args` excludes the program name. Primary output goes
// to `out` (or to --out), diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace madic
