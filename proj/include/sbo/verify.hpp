#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Exact algebraic identities of the chain probabilities, checked on random
// well-conditioned size tuples.  The suite is the single source used by both
// the command line `verify` subcommand and the test binaries.

namespace sbo::verify {

struct IdentityResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Runs every identity over `tuples` random size tuples (n <= 7, sizes
// log-uniform in [0.1, 10]) and reports the worst residual per identity.
std::vector<IdentityResult> run_all(std::uint64_t seed, int tuples);

}  // namespace sbo::verify
