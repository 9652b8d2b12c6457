#pragma once

#include <string>

#include "cyclomoment/lfunc.hpp"

namespace cyclo {

enum class Parity { even, odd };

inline const char* parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

struct MomentReport {
    long long q = 0;
    Parity parity = Parity::even;
    int weighted = 0;  // weight bit b: terms carry 1/f_chi^b
    double sum = 0.0;
    double main_term = 0.0;
    double abs_err_num = 0.0;  // accumulated numeric error bound on `sum`
    double rel_dev = 0.0;      // |sum - main_term| / main_term
};

// sum over nonprincipal chi mod q of the given parity of
// f_chi^{-b} / |L(1,chi)|^2, conjugate pairs grouped so the result is a sum
// of real terms in a fixed character order (thread-count independent).
double negative_moment(long long q, Parity parity, int weight_bit);
double negative_moment(const GroupPtr& group, Parity parity, int weight_bit,
                       int threads = 1, double* abs_err_out = nullptr);

// Same sum over all nonprincipal characters regardless of parity (used by the
// parity-decomposition checks).
double negative_moment_all(const GroupPtr& group, int weight_bit, int threads = 1);

// (15 / (2 pi^2)) prod_{p|q} (1 + p^{-2})^{-1} phi(q).
double main_term_even(long long q);

// (15 / (2 pi^2)) ((p-1)^2 / (p^2+1)) k for prime p, k >= 1.
double main_term_conductor(long long p, int k);

MomentReport moment_report(long long q, Parity parity, int weight_bit, int threads = 1);

// sum over m, n >= 1 with gcd(mn, q) = 1 and m = +-n (mod l) of
// mu(m) mu(n) / (mn) * exp(-mn / X), truncated where exp(-mn/X) < eps_trunc
// (i.e. mn > X ln(1/eps)).  The exponential weight decays in mn, matching the
// diagonal/off-diagonal split that produces the main term below.
double weighted_moebius_sum(long long q, long long l, double X, double eps_trunc = 1e-12);

// (15 / pi^2) prod_{p|q} (1 + p^{-2})^{-1}  -- the X -> inf limit above.
double moebius_main_term(long long q);

}  // namespace cyclo
