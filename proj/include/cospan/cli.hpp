#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cospan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitModelError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

}  // namespace cospan::cli
