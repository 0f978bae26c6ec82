#pragma once

#include <cstdint>

#include "rpde/path_lift.hpp"

namespace rpde {

// Stratonovich-consistent Brownian lift on `grid`, built from the
// piecewise-linear interpolant on an R-times dyadically refined grid and
// coarse-grained back by Chen. Shared-randomness refinement: the coarse
// increments come from a per-interval stream and finer points from dyadic
// midpoint displacement keyed by (seed, interval, level, node), so for a
// fixed seed the level-1 values are identical for every R and the level-2
// values form a convergent family as R grows. R must be a power of two.
PathLift brownian_lift(std::uint64_t seed, const TimeGrid& grid, int refinement, int channels);

}  // namespace rpde
