#pragma once

#include <iosfwd>

namespace runperm::cli {

// Runs the runperm command line. Returns the process exit code: 0 on
// success, 1 on a failed command (bad input, failed verification, query out
// of range), 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace runperm::cli
