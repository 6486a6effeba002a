#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace latsurj::cli {

/// Looks up an environment variable; injectable for tests.
using Environment = std::function<std::optional<std::string>(const std::string&)>;

Environment process_environment();

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

/// Runs one invocation. `args` excludes the program name; matrices named
/// "-" (or omitted) are read from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
            const Environment& env = process_environment());

}  // namespace latsurj::cli
