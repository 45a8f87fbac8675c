#pragma once

// Counter-based pseudo-random primitives (SplitMix64 finalizer). Loss draws
// are keyed on (seed, t, f) rather than produced by a sequential stream, so
// oblivious loss matrices never depend on the policy's actions and derived
// seeds are order-independent.

#include <cstdint>

namespace aufh::rng {

inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return mix(mix(mix(seed) ^ a) ^ b);
}

// [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace aufh::rng
