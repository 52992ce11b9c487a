#ifndef ECDL_POLLARD_HPP
#define ECDL_POLLARD_HPP

#include <cstdint>

#include "ecdl/curve.hpp"
#include "ecdl/rng.hpp"

namespace ecdl {

struct RhoResult {
    uint64_t z = 0;
    uint64_t steps = 0;   // group operations in the successful walk
    uint64_t restarts = 0;
};

// Additive 16-way walk with Brent cycle detection. Restarts internally on
// degenerate collisions; the walk invariant current = aP + bQ is re-checked
// every 2^10 steps.
RhoResult rho_solve(const SubgroupCtx& sub, Rng& rng);

} // namespace ecdl

#endif
