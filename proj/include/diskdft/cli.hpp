#pragma once

/// \file cli.hpp
/// Command-line front end. `run` is the whole program minus process setup,
/// so it can be driven in-process by tests.
///
/// Exit codes: 0 success, 2 invalid input, 3 numerical failure.
/// DISKDFT_SERIES_TOL overrides the series truncation tolerance (default 1e-16).

#include <iosfwd>
#include <string>
#include <vector>

namespace diskdft::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diskdft::cli
