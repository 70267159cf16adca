#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treeset::cli {

// Runs one command line. Returns the process exit code: 0 whenever the
// command completed (whatever the mathematical verdict), 1 for usage errors
// and 2 for input, horizon or precondition errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treeset::cli
