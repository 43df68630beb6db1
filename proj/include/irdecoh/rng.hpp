#pragma once

#include <cstdint>

// Counter-based pseudorandom numbers: a stateless splitmix64 output function
// applied to (seed, index).  Streams are reproducible and independent of how
// samples are sharded across threads.

namespace irdecoh {

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) with 53 random bits.
inline double counter_uniform(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(counter_hash(seed, index) >> 11) * 0x1.0p-53;
}

}  // namespace irdecoh
