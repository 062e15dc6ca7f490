#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace godel::cli {

// Runs one CLI command.  Exit code 0 on success, 1 on domain errors (an
// error JSON goes to stdout), 2 on usage errors (message on stderr).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace godel::cli
