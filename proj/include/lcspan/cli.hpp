#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcspan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;

// Runs one command line (without the program name). Artifacts go to files or
// to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcspan::cli
