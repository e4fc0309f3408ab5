#pragma once

#include <cstdint>
#include <vector>

#include "gksum/rational.hpp"
#include "gksum/verifier.hpp"

namespace gksum {

inline constexpr std::uint64_t kDefaultSeed = 20260810;

// splitmix64; self-contained so seeded runs are byte-identical everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool chance(long percent) { return range(1, 100) <= percent; }

private:
    std::uint64_t state_;
};

// Grid entries: numerators in [-99, 99], denominators in [1, 20].
inline Rational random_grid_rational(Rng& rng) {
    return Rational(rng.range(-99, 99), rng.range(1, 20));
}

inline ArraySpec random_grid2(Rng& rng, long n, long lower = 1) {
    std::vector<std::vector<Rational>> grid(static_cast<std::size_t>(n));
    for (auto& row : grid) {
        row.reserve(static_cast<std::size_t>(n));
        for (long j = 0; j < n; ++j) row.push_back(random_grid_rational(rng));
    }
    return ArraySpec::explicit2(std::move(grid), lower);
}

inline ArraySpec random_grid3(Rng& rng, long n, long lower = 1) {
    std::vector<Rational> flat;
    flat.reserve(static_cast<std::size_t>(n * n * n));
    for (long i = 0; i < n * n * n; ++i) flat.push_back(random_grid_rational(rng));
    return ArraySpec::explicit3(std::move(flat), n, lower);
}

} // namespace gksum
