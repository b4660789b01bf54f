#pragma once

#include <iosfwd>

namespace elkg {

// Exit codes: 0 ok, 1 parse or validation error, 2 I/O error, 64 usage.
inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 1;
inline constexpr int exit_io = 2;
inline constexpr int exit_usage = 64;

// Payload goes to `out`, diagnostics and --stats to `err`. An output path of
// "-" (the default) also means `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace elkg
