#pragma once

#include <ostream>

namespace ftp::cli {

// Entry point shared by the executable and the tests. Returns the process
// exit code: 0 on success, 1 on errors, 2 when the solver does not converge.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ftp::cli
