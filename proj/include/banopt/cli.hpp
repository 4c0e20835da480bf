#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace banopt {

// The `ban-opt` command line: analyze | attractors | outputs | optimize.
// Returns the process exit code; failure modes map to disjoint codes
// (2 parse, 3 promise, 4 cap, 5 open inputs, 6 cyclic, 1 verification
// mismatch or internal error).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace banopt
