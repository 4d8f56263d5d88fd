#pragma once

#include <cmath>
#include <cstdint>

namespace euler2d {

/// Counter-based random number generation: every draw is a pure function of
/// the index tuple, so any worker can produce any increment without shared
/// state or sequencing.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_tuple(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                std::uint64_t c, std::uint64_t d) {
    std::uint64_t h = splitmix64(seed ^ 0x243F6A8885A308D3ull);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    h = splitmix64(h ^ d);
    return h;
}

/// Uniform in the open interval (0, 1).
inline double uniform_open(std::uint64_t h) {
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal from the tuple (seed, a, b, c) via Box-Muller.
inline double gaussian(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    const double u1 = uniform_open(hash_tuple(seed, a, b, c, 0));
    const double u2 = uniform_open(hash_tuple(seed, a, b, c, 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace rng
}  // namespace euler2d
