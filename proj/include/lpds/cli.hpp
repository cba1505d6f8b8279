#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lpds::cli {

/// Runs one invocation; `args` excludes the program name. Returns the exit
/// status: 0 success, 1 verification or check failure, 2 bad arguments or
/// unreadable input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpds::cli
