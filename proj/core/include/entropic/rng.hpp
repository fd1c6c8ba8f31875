#pragma once

#include <cstdint>

namespace entropic {

/// Stateless counter-based random stream. Every draw is a pure function of
/// (seed, walker, step, draw index), so trajectories are bitwise identical
/// no matter how walkers are scheduled across threads.
namespace rng {

/// SplitMix64 finalizer; full-avalanche 64-bit mixing.
constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t hash4(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
    std::uint64_t h = mix(seed);
    h = mix(h ^ a);
    h = mix(h ^ b);
    h = mix(h ^ c);
    return h;
}

/// Uniform double in the open interval (0, 1).
constexpr double uniform01(std::uint64_t h) {
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double normal(std::uint64_t seed, std::uint64_t walker, std::uint64_t step,
              std::uint64_t draw);

double uniform(std::uint64_t seed, std::uint64_t walker, std::uint64_t step,
               std::uint64_t draw);

} // namespace rng
} // namespace entropic
