#pragma once

#include <iosfwd>

namespace coarse_cli {

// Full argument parsing and dispatch for the `coarse` binary. Factored out of
// main() so tests can drive the exact command surface in process. Returns the
// process exit code; normal output goes to `out` unless --out redirects it,
// errors go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace coarse_cli
