#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cultrule::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitMalformed = 2;

// Runs one command. `args` excludes the program name. The JSON payload goes
// to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cultrule::cli
