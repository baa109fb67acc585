#pragma once

#include <iosfwd>

namespace liouville::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kParseError = 2,
    kHypothesesNotMet = 3,
};

// Subcommands: classify, construct, verify, estimate, volume, descend.
// JSON goes to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace liouville::cli
