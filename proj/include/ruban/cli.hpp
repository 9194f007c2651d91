#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ruban {

// Parses argv-style arguments and runs one command.  Returns the process
// exit code: 0 success, 1 parse/domain error, 2 internal invariant breach.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace ruban
