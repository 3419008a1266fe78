#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smove {

// Exit codes: 0 pass, 1 fail/false, 2 input error, 3 obstructed.
// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smove
