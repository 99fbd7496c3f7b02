#pragma once

#include <cmath>
#include <cstdint>

namespace kising::rng {

// Counter-based generator: draw i of stream `seed` is a pure function of
// (seed, i), so any chunking of a sample range reproduces the same values.
// The mixer is the SplitMix64 finalizer.

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

[[nodiscard]] inline std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

[[nodiscard]] inline std::uint64_t bits_at(std::uint64_t seed, std::uint64_t i) {
    return mix(seed + (i + 1) * golden_gamma);
}

/// Uniform double in (0, 1]; never 0, so it is safe under log().
[[nodiscard]] inline double uniform_at(std::uint64_t seed, std::uint64_t i) {
    return static_cast<double>((bits_at(seed, i) >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal via the Box-Muller cosine branch; consumes two counters.
[[nodiscard]] inline double gaussian_at(std::uint64_t seed, std::uint64_t i) {
    const double u1 = uniform_at(seed, 2 * i);
    const double u2 = uniform_at(seed, 2 * i + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace kising::rng
