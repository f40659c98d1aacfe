#ifndef COMMDIM_CLI_HPP
#define COMMDIM_CLI_HPP

#include <iosfwd>

namespace commdim::cli {

// Exit codes: 0 success/Yes/pass, 1 No/fail, 2 Unknown,
// 64 usage error, 65 data-format error.
inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kUnknown = 2;
inline constexpr int kUsageError = 64;
inline constexpr int kDataError = 65;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace commdim::cli

#endif
