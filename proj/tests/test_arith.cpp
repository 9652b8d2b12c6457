#include "cyclomoment/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "doctest.h"

using namespace cyclo;

namespace {

// brute-force oracles, independent of the library code paths
long long phi_brute(long long n) {
    long long c = 0;
    for (long long a = 1; a <= n; ++a)
        if (gcd_ll(a, n) == 1) ++c;
    return c;
}

long long order_brute(long long g, long long q) {
    long long x = g % q, ord = 1;
    while (x != 1) {
        x = mul_mod(x, g, q);
        ++ord;
    }
    return ord;
}

}  // namespace

TEST_CASE("factorize basics") {
    CHECK(factorize(1).factors.empty());
    const auto f12 = factorize(12).factors;
    REQUIRE(f12.size() == 2);
    CHECK(f12[0] == std::pair<long long, int>{2, 2});
    CHECK(f12[1] == std::pair<long long, int>{3, 1});
    // 10007: trial division to sqrt(n) finds no factor
    const auto f = factorize(10007).factors;
    REQUIRE(f.size() == 1);
    CHECK(f[0].first == 10007);
    CHECK(f[0].second == 1);
    CHECK_THROWS(factorize(0));
    CHECK_THROWS(factorize((1LL << 40) + 1));
}

TEST_CASE("factorize reconstructs n and orders primes") {
    for (long long n : {2LL, 60LL, 97LL, 1024LL, 360360LL, 999966000289LL}) {
        const auto f = factorize(n);
        long long prod = 1;
        long long prev = 0;
        for (const auto& [p, e] : f.factors) {
            CHECK(p > prev);
            prev = p;
            CHECK(e >= 1);
            for (int i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("euler_phi examples and brute force") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(81) == 54);
    CHECK(euler_phi(10007) == 10006);
    for (long long n = 1; n <= 300; ++n) CHECK(euler_phi(n) == phi_brute(n));
}

TEST_CASE("moebius examples") {
    CHECK(moebius(1) == 1);
    CHECK(moebius(4) == 0);
    CHECK(moebius(30) == -1);
    CHECK(moebius(6) == 1);
    CHECK(moebius(9) == 0);
}

TEST_CASE("divisors") {
    CHECK(divisors(1) == std::vector<long long>{1});
    CHECK(divisors(12) == std::vector<long long>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(125) == std::vector<long long>{1, 5, 25, 125});
}

TEST_CASE("phi_star examples") {
    CHECK(phi_star(9) == 4);   // p^{j-2} (p-1)^2 at p = 3, j = 2
    CHECK(phi_star(2) == 0);   // no primitive character mod 2
    CHECK(phi_star(10007) == 10005);  // p - 2 for prime p
    CHECK(phi_star(1) == 1);
}

TEST_CASE("sum of phi over divisors equals n") {
    for (long long n = 1; n <= 10000; ++n) {
        long long s = 0;
        for (long long d : divisors(n)) s += euler_phi(d);
        CHECK(s == n);
    }
}

TEST_CASE("phi_star sums to phi(q) - 1 over divisors > 1") {
    for (long long q = 2; q <= 10000; ++q) {
        long long s = 0;
        for (long long d : divisors(q))
            if (d > 1) s += phi_star(d);
        CHECK(s == euler_phi(q) - 1);
    }
}

TEST_CASE("mu and phi are multiplicative on coprime pairs") {
    std::uint64_t state = 12345;
    auto next = [&] {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long long>((state >> 33) % 10000) + 1;
    };
    int found = 0;
    while (found < 200) {
        const long long m = next(), n = next();
        if (gcd_ll(m, n) != 1) continue;
        ++found;
        CHECK(moebius(m * n) == moebius(m) * moebius(n));
        CHECK(euler_phi(m * n) == euler_phi(m) * euler_phi(n));
    }
}

TEST_CASE("unit_group_generators examples") {
    using gens_t = std::vector<std::pair<long long, long long>>;
    CHECK(unit_group_generators(5) == gens_t{{2, 4}});
    CHECK(unit_group_generators(16) == gens_t{{15, 2}, {5, 4}});
    CHECK(unit_group_generators(9) == gens_t{{2, 6}});
    CHECK(unit_group_generators(8) == gens_t{{7, 2}, {5, 2}});
    CHECK(unit_group_generators(3) == gens_t{{2, 2}});
    CHECK(unit_group_generators(4) == gens_t{{3, 2}});
    CHECK_THROWS(unit_group_generators(2));
    CHECK_THROWS(unit_group_generators(1));
}

TEST_CASE("generator orders match brute force") {
    for (long long q : {5LL, 7LL, 9LL, 16LL, 25LL, 27LL, 32LL, 45LL, 60LL, 101LL}) {
        for (const auto& [g, ord] : unit_group_generators(q)) {
            CHECK(gcd_ll(g, q) == 1);
            CHECK(order_brute(g, q) == ord);
        }
    }
}

TEST_CASE("generators span exactly phi(q) residues") {
    for (long long q = 3; q <= 3000; ++q) {
        const auto gens = unit_group_generators(q);
        long long expected = 1;
        for (const auto& [g, ord] : gens) expected *= ord;
        REQUIRE(expected == euler_phi(q));
        // enumerate all products of generator powers
        std::set<long long> seen{1};
        std::vector<long long> current{1};
        for (const auto& [g, ord] : gens) {
            std::vector<long long> grown;
            grown.reserve(current.size() * ord);
            for (long long base : current) {
                long long x = base;
                for (long long i = 0; i < ord; ++i) {
                    grown.push_back(x);
                    x = mul_mod(x, g, q);
                }
            }
            current = std::move(grown);
        }
        seen.insert(current.begin(), current.end());
        CHECK(static_cast<long long>(seen.size()) == euler_phi(q));
    }
}

TEST_CASE("is_prime / is_prime_power") {
    CHECK(is_prime(2));
    CHECK(is_prime(10007));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(10201));  // 101^2
    long long p = 0;
    int k = 0;
    CHECK(is_prime_power(10201, &p, &k));
    CHECK(p == 101);
    CHECK(k == 2);
    CHECK(is_prime_power(128, &p, &k));
    CHECK(p == 2);
    CHECK(k == 7);
    CHECK_FALSE(is_prime_power(12));
    CHECK_FALSE(is_prime_power(1));
}
