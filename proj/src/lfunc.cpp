#include "cyclomoment/lfunc.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cyclomoment/parallel.hpp"

namespace cyclo {

double digamma(double x) {
    if (!(x > 0.0))
        throw std::invalid_argument("digamma: x must be > 0, got " + std::to_string(x));
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // psi(x) ~ ln x - 1/(2x) - sum B_{2n} / (2n x^{2n}); at x >= 10 the first
    // omitted term (B16/16/x^16) is below 5e-17
    const double u = 1.0 / (x * x);
    double series = u * (1.0 / 12.0 +
                    u * (-1.0 / 120.0 +
                    u * (1.0 / 252.0 +
                    u * (-1.0 / 240.0 +
                    u * (1.0 / 132.0 +
                    u * (-691.0 / 32760.0 +
                    u * (1.0 / 12.0)))))));
    return acc + std::log(x) - 0.5 / x - series;
}

PsiTable::PsiTable(long long q) : q_(q) {
    if (q < 2) throw std::invalid_argument("PsiTable: q must be >= 2");
    values_.assign(q, 0.0);
    for (long long a = 1; a < q; ++a) {
        values_[a] = digamma(static_cast<double>(a) / q);
        abs_sum_ += std::abs(values_[a]);
    }
}

const PsiTable& PsiCache::get(long long q) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(q);
    if (it == cache_.end())
        it = cache_.emplace(q, std::make_unique<PsiTable>(q)).first;
    return *it->second;
}

namespace {

double digamma_sum_err(const PsiTable& psi, long long phi) {
    const double q = static_cast<double>(psi.modulus());
    return kDigammaAbsErr * static_cast<double>(phi) / q +
           16.0 * std::numeric_limits<double>::epsilon() * psi.abs_sum() / q;
}

}  // namespace

LOneValue l_one_digamma(const DirichletCharacter& chi, const PsiTable& psi) {
    if (chi.is_principal())
        throw std::invalid_argument("l_one_digamma: principal character (pole at s=1)");
    const auto& g = *chi.group();
    const long long q = g.modulus();
    if (psi.modulus() != q)
        throw std::invalid_argument("l_one_digamma: psi table modulus mismatch");
    std::complex<double> acc{0.0, 0.0};
    for (long long a = 1; a < q; ++a) {
        if (!g.is_unit(a)) continue;
        acc += g.root_of_unity(g.angle_numerator(chi.exponents(), a)) * psi.at(a);
    }
    LOneValue out;
    out.value = -acc / static_cast<double>(q);
    out.abs_err = digamma_sum_err(psi, g.phi());
    out.method = LMethod::digamma;
    return out;
}

LOneValue l_one_digamma(const DirichletCharacter& chi) {
    return l_one_digamma(chi, PsiTable(chi.modulus()));
}

SeriesTable::SeriesTable(long long q, long long N) : q_(q), n_(N) {
    if (q < 3) throw std::invalid_argument("SeriesTable: q must be >= 3");
    if (N < q)
        throw std::invalid_argument("SeriesTable: truncation N must be >= q, got N = " +
                                    std::to_string(N));
    class_sums_.assign(q, 0.0);
    long long r = 1 % q;
    for (long long n = 1; n <= N; ++n) {
        class_sums_[r] += 1.0 / static_cast<double>(n);
        if (++r == q) r = 0;
    }
    for (double h : class_sums_) h_total_ += h;
}

LOneValue SeriesTable::eval(const DirichletCharacter& chi) const {
    if (chi.is_principal())
        throw std::invalid_argument("l_one_series_oracle: principal character");
    if (chi.modulus() != q_)
        throw std::invalid_argument("l_one_series_oracle: modulus mismatch");

    std::complex<double> partial{0.0, 0.0};
    for (long long r = 1; r < q_; ++r)
        if (chi.group()->is_unit(r)) partial += chi.evaluate(r) * class_sums_[r];

    // periodic prefix sums S(1..q); S(q) = 0, so S(N) = S(N mod q)
    std::vector<std::complex<double>> prefix(q_ + 1);
    prefix[0] = {0.0, 0.0};
    double max_abs = 0.0;
    std::complex<double> mean{0.0, 0.0};
    for (long long n = 1; n <= q_; ++n) {
        prefix[n] = prefix[n - 1] + chi.evaluate(n);
        max_abs = std::max(max_abs, std::abs(prefix[n]));
        mean += prefix[n];
    }
    mean /= static_cast<double>(q_);

    const std::complex<double> s_at_n = prefix[n_ % q_];
    LOneValue out;
    out.value = partial + (mean - s_at_n) / static_cast<double>(n_ + 1);
    out.abs_err = 2.0 * static_cast<double>(q_) * max_abs /
                      (static_cast<double>(n_) * static_cast<double>(n_)) +
                  32.0 * std::numeric_limits<double>::epsilon() * h_total_;
    out.method = LMethod::series;
    return out;
}

LOneValue l_one_series_oracle(const DirichletCharacter& chi, long long N) {
    return SeriesTable(chi.modulus(), N).eval(chi);
}

LOneValue l_one(const DirichletCharacter& chi, GroupCache& groups, PsiCache& psi_tables) {
    if (chi.is_principal())
        throw std::invalid_argument("l_one: principal character (pole at s=1)");
    const long long q = chi.modulus();
    const DirichletCharacter prim = chi.primitive_part(groups);
    const long long f = prim.modulus();
    const LOneValue base = l_one_digamma(prim, psi_tables.get(f));

    std::complex<double> factor{1.0, 0.0};
    for (const auto& [p, e] : factorize(q).factors) {
        (void)e;
        factor *= 1.0 - prim.evaluate(p) / static_cast<double>(p);
    }
    LOneValue out;
    out.value = base.value * factor;
    out.abs_err = base.abs_err * std::abs(factor) +
                  8.0 * std::numeric_limits<double>::epsilon() * std::abs(out.value);
    out.method = f < q ? LMethod::induced : LMethod::digamma;
    return out;
}

LOneValue l_one(const DirichletCharacter& chi) {
    GroupCache groups;
    PsiCache psi_tables;
    return l_one(chi, groups, psi_tables);
}

namespace {

std::vector<LOneValue> batch_direct(const CharacterGroup& g, const PsiTable& psi,
                                    int threads) {
    const long long q = g.modulus();
    const long long phi = g.phi();
    const long long L = g.angle_denominator();
    const int r = g.rank();
    const double err = digamma_sum_err(psi, phi);

    // psi values and dlog rows in odometer order, visited once per character
    const auto& elems = g.element_order();
    std::vector<double> psi_seq(phi);
    std::vector<std::uint32_t> dlog_seq(static_cast<std::size_t>(phi) * r);
    for (long long u = 0; u < phi; ++u) {
        psi_seq[u] = psi.at(elems[u]);
        const std::uint32_t* row = g.dlog(elems[u]);
        for (int i = 0; i < r; ++i) dlog_seq[static_cast<std::size_t>(u) * r + i] = row[i];
    }

    std::vector<LOneValue> out(phi);
    out[0] = {std::complex<double>{0.0, 0.0}, std::numeric_limits<double>::infinity(),
              LMethod::digamma};
    parallel_for(phi - 1, threads, [&](std::size_t j) {
        const long long idx = static_cast<long long>(j) + 1;
        const auto e = g.index_exponents(idx);
        std::vector<long long> coef(r);
        for (int i = 0; i < r; ++i)
            coef[i] = static_cast<long long>(e[i]) * g.angle_weights()[i] % L;
        std::complex<double> acc{0.0, 0.0};
        for (long long u = 0; u < phi; ++u) {
            long long t = 0;
            const std::uint32_t* x = &dlog_seq[static_cast<std::size_t>(u) * r];
            for (int i = 0; i < r; ++i) t += coef[i] * x[i] % L;
            t %= L;
            acc += g.root_of_unity(t) * psi_seq[u];
        }
        out[idx].value = -acc / static_cast<double>(q);
        out[idx].abs_err = err;
        out[idx].method = LMethod::digamma;
    });
    return out;
}

std::vector<LOneValue> batch_fft(const CharacterGroup& g, const PsiTable& psi) {
    const long long q = g.modulus();
    const long long phi = g.phi();
    const int r = g.rank();
    const double err = digamma_sum_err(psi, phi) +
                       64.0 * std::numeric_limits<double>::epsilon() *
                           std::log2(static_cast<double>(phi) + 2.0) * psi.abs_sum() /
                           static_cast<double>(q);

    // S[e] = sum_x psi(a(x)/q) exp(+2 pi i e.x / o) is a rank-r backward DFT
    // with the odometer layout (last generator fastest = row-major)
    std::vector<std::complex<double>> in(phi), sums(phi);
    const auto& elems = g.element_order();
    for (long long u = 0; u < phi; ++u) in[u] = psi.at(elems[u]);

    std::vector<int> dims(r);
    for (int i = 0; i < r; ++i) dims[i] = static_cast<int>(g.generator_orders()[i]);
    fftw_plan plan = fftw_plan_dft(r, dims.data(),
                                   reinterpret_cast<fftw_complex*>(in.data()),
                                   reinterpret_cast<fftw_complex*>(sums.data()),
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("l_one_all: fftw plan creation failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    std::vector<LOneValue> out(phi);
    out[0] = {std::complex<double>{0.0, 0.0}, std::numeric_limits<double>::infinity(),
              LMethod::digamma};
    for (long long idx = 1; idx < phi; ++idx) {
        out[idx].value = -sums[idx] / static_cast<double>(q);
        out[idx].abs_err = err;
        out[idx].method = LMethod::digamma;
    }
    return out;
}

}  // namespace

std::vector<LOneValue> l_one_all(const CharacterGroup& group, BatchMethod method,
                                 int threads) {
    if (group.modulus() < 3)
        throw std::invalid_argument("l_one_all: group modulus must be >= 3");
    const PsiTable psi(group.modulus());
    if (method == BatchMethod::automatic)
        method = group.phi() >= 4096 ? BatchMethod::fft : BatchMethod::direct;
    return method == BatchMethod::fft ? batch_fft(group, psi)
                                      : batch_direct(group, psi, threads);
}

}  // namespace cyclo
