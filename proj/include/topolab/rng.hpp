#pragma once

#include <cstdint>

namespace topolab {

// splitmix64: tiny deterministic generator used wherever reproducible
// pseudo-random sampling is needed (premise trials, fuzzers). Chosen over
// std engines to pin the stream across platforms and standard libraries.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

} // namespace topolab
