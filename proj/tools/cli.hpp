#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rgg::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Runs one invocation. `args` excludes the program name, e.g.
/// {"generate", "--N", "4", "--r", "0.25", "--out", "dir"}. Returns the
/// process exit code: 0 on success, 1 on a runtime failure, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rgg::cli
