#pragma once

#include <cstdint>
#include <random>

namespace gxtsp {

/// Random number engine used throughout the library. One seeded engine
/// reproduces an entire GA run; benchmark harnesses derive per-run seeds
/// from a base seed so runs stay independently re-executable.
using Rng = std::mt19937_64;

/// Uniform integer in the closed range [lo, hi].
inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

} // namespace gxtsp
