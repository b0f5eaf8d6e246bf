#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gmdx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

// "start:stop:count" (inclusive endpoints), a comma list, or one value.
// `flag` names the option in error messages.
std::vector<double> parse_grid(std::string_view text, std::string_view flag);

// Positive integer from GMD_EXTREMES_THREADS, else hardware concurrency.
unsigned thread_cap();

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gmdx::cli
