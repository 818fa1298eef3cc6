#pragma once

#include <cstdint>
#include <random>

namespace cgp {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double unit_uniform(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound). `bound` must be positive.
inline std::int64_t uniform_below(Rng& rng, std::int64_t bound) {
    std::uniform_int_distribution<std::int64_t> dist(0, bound - 1);
    return dist(rng);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream for run `index` under `master`. Depends only on the pair,
/// so batches can be scheduled in any order.
inline Rng derive_stream(std::uint64_t master, std::uint64_t index) {
    return Rng(splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

}  // namespace cgp
