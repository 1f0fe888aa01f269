#pragma once

#include <string>
#include <vector>

namespace figjudge {

// Entry point behind the figjudge binary; args exclude the program name.
// Exit codes: 0 success, 1 validation error, 2 backend/transport failure,
// 3 degenerate statistics.
int run_cli(const std::vector<std::string>& args);

} // namespace figjudge
