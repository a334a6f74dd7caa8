#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace lsp {

// splitmix64; all per-position noise is derived from (seed, position, step)
// so replays are exact and no global RNG stream exists.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t salt = 0) {
    std::uint64_t h = splitmix64(seed ^ 0x8e9c1f2ab345d6f7ULL);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ (b + 0x165667b19e3779f9ULL));
    h = splitmix64(h ^ (salt * 0xd6e8feb86659fd93ULL));
    return h;
}

// Uniform in [0, 1), 53 mantissa bits.
inline double uniform01(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller on two derived uniforms.
inline double gaussian(std::uint64_t h) {
    double u1 = uniform01(splitmix64(h));
    double u2 = uniform01(splitmix64(h ^ 0x5851f42d4c957f2dULL));
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace lsp
