#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitInputError = 2;

/// Entry point of the `edss` tool. `args` excludes the program name.
/// Returns 0 on success, 1 when a plan fails validation, 2 on bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace edss::cli
