#pragma once

#include <cstdint>
#include <random>

#include "ambc/types.hpp"

namespace ambc {

using Rng = std::mt19937_64;

/// Deterministic, decorrelated stream for (master seed, stream, index).
/// Monte Carlo trials draw from substream(seed, point, trial) so results do
/// not depend on which worker ran which trial.
Rng substream(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t index);

/// Circularly symmetric complex Gaussian with E|z|^2 = variance.
Complex complex_gaussian(Rng& rng, double variance);

}  // namespace ambc
