#include "cyclomoment/moments.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "cyclomoment/parallel.hpp"

namespace cyclo {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfZeta2OverZeta4 = 15.0 / (2.0 * kPi * kPi);  // zeta(2)/(2 zeta(4))

double grouped_moment(const GroupPtr& group, std::optional<Parity> parity,
                      int weight_bit, int threads, double* abs_err_out) {
    const CharacterGroup& g = *group;
    const long long count = g.character_count();

    // per-character contributions, filled independently and reduced in index
    // order; a conjugate pair is charged to its smaller index with weight 2
    std::vector<double> terms(count, 0.0);
    parallel_for(count - 1, threads, [&](std::size_t j) {
        const long long idx = static_cast<long long>(j) + 1;
        const long long cidx = g.conjugate_index(idx);
        if (cidx < idx) return;
        const auto e = g.index_exponents(idx);
        if (parity && g.is_even(e) != (*parity == Parity::even)) return;
        terms[idx] = cidx == idx ? 1.0 : 2.0;
        if (weight_bit) terms[idx] /= static_cast<double>(g.conductor_of(e));
    });

    const auto lvals = l_one_all(g, BatchMethod::automatic, threads);
    double sum = 0.0, err = 0.0;
    for (long long idx = 1; idx < count; ++idx) {
        if (terms[idx] == 0.0) continue;
        const double nrm = std::norm(lvals[idx].value);
        const double mag = std::abs(lvals[idx].value);
        sum += terms[idx] / nrm;
        err += terms[idx] * 2.0 * lvals[idx].abs_err / (nrm * mag);
    }
    if (abs_err_out) *abs_err_out = err;
    return sum;
}

}  // namespace

double negative_moment(const GroupPtr& group, Parity parity, int weight_bit, int threads,
                       double* abs_err_out) {
    return grouped_moment(group, parity, weight_bit, threads, abs_err_out);
}

double negative_moment(long long q, Parity parity, int weight_bit) {
    return grouped_moment(character_group(q), parity, weight_bit, 1, nullptr);
}

double negative_moment_all(const GroupPtr& group, int weight_bit, int threads) {
    return grouped_moment(group, std::nullopt, weight_bit, threads, nullptr);
}

double main_term_even(long long q) {
    if (q < 3) throw std::invalid_argument("main_term_even: q must be >= 3");
    double prod = 1.0;
    for (const auto& [p, e] : factorize(q).factors) {
        (void)e;
        prod /= 1.0 + 1.0 / (static_cast<double>(p) * p);
    }
    return kHalfZeta2OverZeta4 * prod * static_cast<double>(euler_phi(q));
}

double main_term_conductor(long long p, int k) {
    if (!is_prime(p))
        throw std::invalid_argument("main_term_conductor: p must be prime, got " +
                                    std::to_string(p));
    if (k < 1) throw std::invalid_argument("main_term_conductor: k must be >= 1");
    const double pd = static_cast<double>(p);
    return kHalfZeta2OverZeta4 * ((pd - 1.0) * (pd - 1.0) / (pd * pd + 1.0)) *
           static_cast<double>(k);
}

MomentReport moment_report(long long q, Parity parity, int weight_bit, int threads) {
    MomentReport rep;
    rep.q = q;
    rep.parity = parity;
    rep.weighted = weight_bit;
    if (weight_bit) {
        long long p = 0;
        int k = 0;
        if (!is_prime_power(q, &p, &k))
            throw std::invalid_argument(
                "moment_report: the conductor-weighted main term needs q = p^k, got " +
                std::to_string(q));
        rep.main_term = main_term_conductor(p, k);
    } else {
        rep.main_term = main_term_even(q);
    }
    rep.sum = negative_moment(character_group(q), parity, weight_bit, threads,
                              &rep.abs_err_num);
    rep.rel_dev = std::abs(rep.sum - rep.main_term) / rep.main_term;
    return rep;
}

double moebius_main_term(long long q) {
    if (q < 1) throw std::invalid_argument("moebius_main_term: q must be >= 1");
    double prod = 1.0;
    for (const auto& [p, e] : factorize(q).factors) {
        (void)e;
        prod /= 1.0 + 1.0 / (static_cast<double>(p) * p);
    }
    return (15.0 / (kPi * kPi)) * prod;
}

double weighted_moebius_sum(long long q, long long l, double X, double eps_trunc) {
    if (q < 1) throw std::invalid_argument("weighted_moebius_sum: q must be >= 1");
    if (l < 1) throw std::invalid_argument("weighted_moebius_sum: l must be >= 1");
    if (!(X > 1.0)) throw std::invalid_argument("weighted_moebius_sum: X must be > 1");
    if (!(eps_trunc > 0.0 && eps_trunc < 1.0))
        throw std::invalid_argument("weighted_moebius_sum: eps_trunc must be in (0,1)");

    const double cutoff = X * std::log(1.0 / eps_trunc);
    const long long M = static_cast<long long>(cutoff);
    if (M > (1LL << 31))
        throw std::invalid_argument("weighted_moebius_sum: X ln(1/eps) too large to sieve");

    // linear sieve for mu up to M
    std::vector<int8_t> mu(M + 1, 0);
    {
        std::vector<int32_t> primes;
        std::vector<uint8_t> composite(M + 1, 0);
        mu[1] = 1;
        for (long long i = 2; i <= M; ++i) {
            if (!composite[i]) {
                primes.push_back(static_cast<int32_t>(i));
                mu[i] = -1;
            }
            for (int32_t p : primes) {
                const long long ip = i * p;
                if (ip > M) break;
                composite[ip] = 1;
                if (i % p == 0) {
                    mu[ip] = 0;
                    break;
                }
                mu[ip] = -mu[i];
            }
        }
    }

    const auto q_primes = factorize(q).factors;
    auto coprime_to_q = [&](long long n) {
        for (const auto& [p, e] : q_primes) {
            (void)e;
            if (n % p == 0) return false;
        }
        return true;
    };

    // pairs enumerated with m <= n and doubled; a pair with m = n (mod l) and
    // m = -n (mod l) still counts once (set condition, not a multiset)
    double sum = 0.0;
    for (long long m = 1; m * m <= M; ++m) {
        if (mu[m] == 0 || !coprime_to_q(m)) continue;
        const double md = static_cast<double>(m);
        sum += std::exp(-md * md / X) / (md * md);  // diagonal, mu(m)^2 = 1

        const long long nmax = M / m;
        const long long r1 = m % l;
        const long long r2 = (l - r1) % l;
        auto accumulate_progression = [&](long long residue) {
            long long n = m + (residue - m % l + l) % l;
            if (n == m) n += l;
            for (; n <= nmax; n += l) {
                if (mu[n] == 0 || !coprime_to_q(n)) continue;
                const double nd = static_cast<double>(n);
                sum += 2.0 * mu[m] * mu[n] * std::exp(-md * nd / X) / (md * nd);
            }
        };
        accumulate_progression(r1);
        if (r2 != r1) accumulate_progression(r2);
    }
    return sum;
}

}  // namespace cyclo
