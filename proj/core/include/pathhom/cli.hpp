#pragma once

// Command-line front end.  Exit status 0 on success, 1 when a check command
// reports a negative verdict, 2 on input or usage errors.

#include <ostream>
#include <string>
#include <vector>

namespace pathhom {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathhom
