#pragma once

// The acceptance suite: every check the finished build must pass, each
// printing exactly one PASS or FAIL line. The standalone acceptance binary
// and the command line selftest both run through here.

#include <iosfwd>
#include <string>

namespace f2alg {

struct AcceptanceOptions {
    unsigned seed = 20240816u;
    // when nonempty, one json snapshot per check is written into this
    // directory as check_<index>.json
    std::string golden_dir;
};

// runs all checks in order and returns true when every one passed
bool run_acceptance(std::ostream& out, const AcceptanceOptions& opt);

}  // namespace f2alg
