#pragma once

// The pfva command line: dims, check and eval subcommands.
//
// Exit codes: 0 success, 1 a check failed, 2 invalid configuration or
// expression, 3 resource limit reached.

#include <iosfwd>

namespace pfva {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_resource = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pfva
