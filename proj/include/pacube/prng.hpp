#pragma once

#include <cstdint>

namespace pacube {

// splitmix64: a fixed 64-bit mixing generator, seeded directly. Fixtures
// derived from it are bit-identical across platforms and implementations,
// which golden tests rely on. Do not swap for std::mt19937 (unspecified
// distribution behaviour across standard libraries).
struct SplitMix64 {
    std::uint64_t state;

    explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0. Modulo bias is irrelevant for the
    // tiny bounds used here (<= 2^20) against a 64-bit stream.
    constexpr std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

} // namespace pacube
