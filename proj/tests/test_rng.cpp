#include "cyclomoment/rng.hpp"

#include <cmath>
#include <cstdint>
#include <set>

#include "doctest.h"

using namespace cyclo;

TEST_CASE("philox block is deterministic and key/counter sensitive") {
    const auto a = philox::block(42, {1, 2, 3, 4});
    const auto b = philox::block(42, {1, 2, 3, 4});
    CHECK(a == b);
    CHECK(philox::block(43, {1, 2, 3, 4}) != a);
    CHECK(philox::block(42, {1, 2, 3, 5}) != a);
}

TEST_CASE("philox known-answer vectors") {
    // zero key/counter block from the Random123 reference vectors; the second
    // one is frozen from this implementation to pin stream stability
    const std::array<std::uint32_t, 4> zero_expect{0x6627e8d5u, 0xe169c58du,
                                                   0xbc57ac4cu, 0x9b00dbd8u};
    CHECK(philox::block(0, {0, 0, 0, 0}) == zero_expect);
    const std::array<std::uint32_t, 4> seeded_expect{0xc88540c0u, 0xe404236du,
                                                     0x86c1b3dcu, 0x7251bdadu};
    CHECK(philox::block(0xdeadbeef12345678ULL, {1, 2, 3, 4}) == seeded_expect);
}

TEST_CASE("streams addressed by coord/slot do not collide") {
    CounterRng rng(7, 0);
    std::set<std::uint64_t> seen;
    for (std::uint32_t coord = 0; coord < 64; ++coord)
        for (std::uint32_t slot = 0; slot < 16; ++slot)
            seen.insert(rng.raw_pair(coord, slot).first);
    CHECK(seen.size() == 64u * 16u);
}

TEST_CASE("uniform01 lies in (0,1] and looks uniform") {
    CounterRng rng(123, 9);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01(static_cast<std::uint32_t>(i), 0);
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        sum += u;
        sumsq += u * u;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 5.0 / std::sqrt(12.0 * n));    // ~5 sigma
    CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("normal_pair has standard moments") {
    CounterRng rng(99, 3);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0, cross = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto [x, y] = rng.normal_pair(static_cast<std::uint32_t>(i), 0);
        sum += x + y;
        sumsq += x * x + y * y;
        cross += x * y;
    }
    CHECK(std::abs(sum / (2 * n)) < 5.0 / std::sqrt(2.0 * n));
    CHECK(std::abs(sumsq / (2 * n) - 1.0) < 0.02);
    CHECK(std::abs(cross / n) < 0.02);
}

TEST_CASE("uniform_int covers the range uniformly") {
    CounterRng rng(5, 17);
    const long long lo = -3, hi = 3;
    long long counts[7] = {0};
    const int n = 70000;
    for (int i = 0; i < n; ++i)
        ++counts[rng.uniform_int(lo, hi, static_cast<std::uint32_t>(i), 0) - lo];
    for (long long c : counts) CHECK(std::abs(c - n / 7) < 600);  // ~6 sigma
    CHECK(rng.uniform_int(4, 4, 0, 0) == 4);
}
