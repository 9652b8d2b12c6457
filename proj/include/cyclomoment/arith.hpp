#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cyclo {

// Everything here runs in 64-bit integers.  Inputs above 2^40 are rejected so
// that intermediate products (e.g. inside mul_mod chains and divisor
// generation) stay far from overflow.
inline constexpr long long kMaxArithInput = 1LL << 40;

struct FactoredInteger {
    long long n = 1;
    // (prime, exponent) with primes strictly increasing, exponents >= 1.
    std::vector<std::pair<long long, int>> factors;
};

// Deterministic trial division up to sqrt(n).  n = 1 yields an empty list.
FactoredInteger factorize(long long n);

bool is_prime(long long n);

// True iff n = p^k with p prime, k >= 1; reports p and k when requested.
bool is_prime_power(long long n, long long* p_out = nullptr, int* k_out = nullptr);

long long euler_phi(long long n);

// 0 for non-squarefree n, otherwise (-1)^(number of prime factors).
int moebius(long long n);

// All divisors of n, ascending.
std::vector<long long> divisors(long long n);

// Number of primitive characters modulo d:  phi*(d) = sum_{l|d} phi(l) mu(d/l).
long long phi_star(long long d);

// Generators of (Z/q)* as a direct product of cyclic groups, q >= 3.
// Odd prime power: the smallest primitive root.  q = 4: residue 3 of order 2.
// q = 2^k, k >= 3: the pair (2^k - 1 ~ -1, order 2) and (5, order 2^{k-2}).
// Composite q: CRT lifts of the per-prime-power generators, primes ascending.
std::vector<std::pair<long long, long long>> unit_group_generators(long long q);

long long gcd_ll(long long a, long long b);
long long mul_mod(long long a, long long b, long long m);
long long pow_mod(long long a, long long e, long long m);
long long inv_mod(long long a, long long m);  // requires gcd(a, m) = 1

}  // namespace cyclo
