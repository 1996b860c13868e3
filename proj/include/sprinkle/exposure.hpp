#pragma once

#include <vector>

#include "sprinkle/rng.hpp"
#include "sprinkle/types.hpp"

namespace sprinkle {

// Bernoulli(q) exposure of every edge in the Cartesian product of the given
// per-part vertex lists. Cost is proportional to the number of successes:
// positions are visited by geometrically distributed jumps over the
// canonically ordered block (part 0 least significant).
std::vector<Edge> expose_block(const Block& parts, double q, Rng& rng);

}  // namespace sprinkle
