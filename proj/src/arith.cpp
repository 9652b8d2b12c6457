#include "cyclomoment/arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cyclo {

namespace {

void check_positive(long long n, const char* who) {
    if (n < 1)
        throw std::invalid_argument(std::string(who) + ": n must be >= 1, got " +
                                    std::to_string(n));
    if (n > kMaxArithInput)
        throw std::invalid_argument(std::string(who) + ": n exceeds 2^40, got " +
                                    std::to_string(n));
}

}  // namespace

long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long mul_mod(long long a, long long b, long long m) {
    return static_cast<long long>((__int128)a * b % m);
}

long long pow_mod(long long a, long long e, long long m) {
    long long r = 1 % m;
    a %= m;
    if (a < 0) a += m;
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

long long inv_mod(long long a, long long m) {
    // extended Euclid; m >= 1, gcd(a, m) must be 1
    long long r0 = m, r1 = ((a % m) + m) % m;
    long long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        long long t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw std::invalid_argument("inv_mod: arguments not coprime");
    return ((t0 % m) + m) % m;
}

FactoredInteger factorize(long long n) {
    check_positive(n, "factorize");
    FactoredInteger out;
    out.n = n;
    long long m = n;
    for (long long p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.factors.emplace_back(p, e);
    }
    if (m > 1) out.factors.emplace_back(m, 1);
    return out;
}

bool is_prime(long long n) {
    if (n < 2) return false;
    const FactoredInteger f = factorize(n);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

bool is_prime_power(long long n, long long* p_out, int* k_out) {
    if (n < 2) return false;
    const FactoredInteger f = factorize(n);
    if (f.factors.size() != 1) return false;
    if (p_out) *p_out = f.factors[0].first;
    if (k_out) *k_out = f.factors[0].second;
    return true;
}

long long euler_phi(long long n) {
    check_positive(n, "euler_phi");
    long long phi = 1;
    for (const auto& [p, e] : factorize(n).factors) {
        long long pe = 1;
        for (int i = 1; i < e; ++i) pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

int moebius(long long n) {
    check_positive(n, "moebius");
    int sign = 1;
    for (const auto& [p, e] : factorize(n).factors) {
        if (e > 1) return 0;
        sign = -sign;
        (void)p;
    }
    return sign;
}

std::vector<long long> divisors(long long n) {
    check_positive(n, "divisors");
    std::vector<long long> divs{1};
    for (const auto& [p, e] : factorize(n).factors) {
        const std::size_t base = divs.size();
        long long pe = 1;
        for (int i = 0; i < e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

long long phi_star(long long d) {
    check_positive(d, "phi_star");
    long long s = 0;
    for (long long l : divisors(d)) s += euler_phi(l) * moebius(d / l);
    return s;
}

namespace {

// Smallest g generating (Z/m)* for m an odd prime power.
long long smallest_primitive_root(long long m) {
    const long long phi = euler_phi(m);
    const auto phi_primes = factorize(phi).factors;
    for (long long g = 2; g < m; ++g) {
        if (gcd_ll(g, m) != 1) continue;
        bool ok = true;
        for (const auto& [r, e] : phi_primes) {
            (void)e;
            if (pow_mod(g, phi / r, m) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("smallest_primitive_root: none found");
}

// x with x = g (mod m), x = 1 (mod q/m); m and q/m coprime.
long long crt_lift(long long g, long long m, long long q) {
    const long long rest = q / m;
    if (rest == 1) return g % q;
    // x = g * rest * inv(rest mod m, m) + m * inv(m mod rest, rest)  (mod q)
    const long long a = mul_mod(mul_mod(g % q, rest % q, q), inv_mod(rest % m, m), q);
    const long long b = mul_mod(m % q, inv_mod(m % rest, rest), q);
    return (a + b) % q;
}

}  // namespace

std::vector<std::pair<long long, long long>> unit_group_generators(long long q) {
    check_positive(q, "unit_group_generators");
    if (q < 3)
        throw std::invalid_argument("unit_group_generators: q must be >= 3, got " +
                                    std::to_string(q));
    std::vector<std::pair<long long, long long>> gens;
    for (const auto& [p, e] : factorize(q).factors) {
        long long pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue;  // (Z/2)* is trivial
            if (e == 2) {
                gens.emplace_back(crt_lift(3, pe, q), 2);
                continue;
            }
            gens.emplace_back(crt_lift(pe - 1, pe, q), 2);
            gens.emplace_back(crt_lift(5, pe, q), pe / 4);
        } else {
            gens.emplace_back(crt_lift(smallest_primitive_root(pe), pe, q),
                              euler_phi(pe));
        }
    }
    return gens;
}

}  // namespace cyclo
