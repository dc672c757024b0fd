#pragma once

// Entry point of the command-line tool, callable in-process so tests can
// drive it without spawning. Exit codes: 0 success, 1 usage error, 2 I/O
// error, 3 no path found.

namespace leoisl {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_io = 2;
inline constexpr int exit_no_path = 3;

int cli_main(int argc, const char* const* argv);

}  // namespace leoisl
