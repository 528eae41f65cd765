#pragma once

#include <cstdint>

namespace bohm {

// splitmix64 output mixer (Steele, Lea, Flood 2014). Used as a counter-based
// generator: each (seed, index) pair yields one well-mixed 64-bit word, so
// draws are independent of evaluation order.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the counter (seed, index).
inline double counter_uniform(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t word = splitmix64(seed + index * 0x9E3779B97F4A7C15ULL);
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace bohm
