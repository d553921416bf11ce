#pragma once

#include <ostream>

namespace jckerr::cli {

/// Entry point shared by the executable and the tests. Returns the process
/// exit code: 0 success, 1 usage, 2 domain, 3 I/O.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jckerr::cli
