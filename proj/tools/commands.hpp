#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twotier::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitToleranceBreach = 3;

// Runs one invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twotier::cli
