#pragma once

#include <string>
#include <vector>

namespace pdechunk {

/// Command-line entry point. args excludes the program name.
/// Exit codes: 0 success, 1 usage error, 2 runtime error.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace pdechunk
