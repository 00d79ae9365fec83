#pragma once

// Deterministic seeding helpers.  All randomized routines take an explicit
// 64-bit seed; sub-streams are derived with splitmix64 so that results are
// independent of thread count and iteration order.

#include <cstdint>
#include <random>

namespace gsnet {

// splitmix64 step (public-domain construction by Vigna); used only to spread
// user seeds into well-mixed stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d49bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for sub-stream `k` of stream `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t k) {
    return splitmix64(seed ^ splitmix64(k));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

// Uniform double in [0,1) from the top 53 bits; avoids distribution objects
// whose output is not pinned down by the standard.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection; n must be > 0.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

}  // namespace gsnet
