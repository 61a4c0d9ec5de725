#pragma once

// Command-line front end. Exit codes: 0 ok, 1 violation or failed check,
// 2 usage / invalid input, 3 non-convergence or kernel underflow.

#include <string>
#include <vector>

namespace n32::cli {

inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNonConvergence = 3;

int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args); ///< args without the program name

const char* version();

} // namespace n32::cli
