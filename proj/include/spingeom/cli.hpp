#pragma once

// Command-line front end: simulate, verify, convergence, decompose.
//
// Exit codes: 0 success, 1 usage or input error, 2 numerical or tolerance
// failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace spingeom::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitFailure = 2;

/// argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spingeom::cli
