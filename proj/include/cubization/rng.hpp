#pragma once

// mt19937_64 with rejection sampling so sampled runs replay identically on
// any platform (std::uniform_int_distribution is not pinned by the standard).

#include <cstdint>
#include <random>

namespace cubization {

inline std::uint64_t bounded_u64(std::mt19937_64& rng, std::uint64_t n) {
    // uniform in [0, n)
    if (n == 0) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

inline int bounded_int(std::mt19937_64& rng, int lo, int hi) {
    // uniform in [lo, hi]
    return lo + static_cast<int>(bounded_u64(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace cubization
