#pragma once

#include <string>
#include <vector>

namespace opspec {

// Full command-line surface; argv-style arguments without the program name.
// Exit status: 0 success, 1 verification/runtime failure, 2 usage error,
// 3 region parse error.
int run_cli(const std::vector<std::string>& args);

}  // namespace opspec
