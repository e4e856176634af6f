#pragma once

#include <cstdint>
#include <string_view>

#include "faithcheck/joint_table.hpp"

namespace faithcheck {

/// SplitMix64 stream. Standard library distributions are not portable across
/// implementations, and byte-identical output for a fixed seed is part of the
/// CLI contract, so seeded randomness goes through this generator only.
struct SplitMix64 {
    uint64_t state = 0;

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound).
    uint64_t below(uint64_t bound) { return next() % bound; }
};

inline uint64_t fnv1a64(const unsigned char* data, size_t len, uint64_t h = 0xcbf29ce484222325ull) {
    for (size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline uint64_t fnv1a64(std::string_view s, uint64_t h = 0xcbf29ce484222325ull) {
    return fnv1a64(reinterpret_cast<const unsigned char*>(s.data()), s.size(), h);
}

/// Random table with a common denominator of at most denom_max, drawn by the
/// stars-and-bars construction (sorted cuts of the denominator). With
/// strictly_positive every cell gets at least 1/denominator.
JointTable random_table(const VarSet& vars, SplitMix64& rng, int denom_max, bool strictly_positive);

}  // namespace faithcheck
