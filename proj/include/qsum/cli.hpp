#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoAnswer = 2;

/// Entry point shared by the `qsum` binary and the tests. `args[0]` is the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qsum::cli
