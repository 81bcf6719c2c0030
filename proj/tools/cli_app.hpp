#pragma once

#include <ostream>

namespace magnus::cli {

// Exit codes: 0 success, 1 usage error, 2 domain error, 3 selftest failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace magnus::cli
