#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace couponclock::cli {

// Full command-line driver. args excludes the program name.
// Exit codes: 0 success, 1 data or computation error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace couponclock::cli
