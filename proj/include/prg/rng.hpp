#pragma once

#include <cstdint>
#include <random>

namespace prg {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive well-separated substream seeds from
// (master seed, grid index, instance index) style tuples.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a = 0, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ (a + 0x100000001b3ULL));
    h = mix64(h ^ (b + 0xcbf29ce484222325ULL));
    h = mix64(h ^ (c + 0x27d4eb2f165667c5ULL));
    return h;
}

inline double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

} // namespace prg
