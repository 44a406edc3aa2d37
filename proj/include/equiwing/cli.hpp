#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace equiwing {

// Exit codes: 0 ok, 2 bad input or I/O, 3 semantic error, 4 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace equiwing
