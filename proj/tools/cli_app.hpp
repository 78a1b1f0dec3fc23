#pragma once

#include <iosfwd>

namespace qident::cli {

// Exit codes: 0 all checks passed, 1 a well-formed run whose check failed, 2 usage/parse/I/O error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qident::cli
