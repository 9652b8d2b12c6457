#include "cyclomoment/selftest.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "cyclomoment/golden.hpp"
#include "cyclomoment/lfunc.hpp"
#include "cyclomoment/loglattice.hpp"
#include "cyclomoment/moments.hpp"
#include "cyclomoment/parallel.hpp"
#include "cyclomoment/sgp.hpp"

namespace cyclo {

namespace {

struct Suite {
    std::vector<InvariantResult> results;

    void report(const std::string& name, bool pass, const std::string& detail) {
        results.push_back({name, pass, detail});
    }
    // worst-deviation pattern: pass iff max measured deviation <= threshold
    void report_dev(const std::string& name, double max_dev, double threshold) {
        std::ostringstream os;
        os << "max deviation " << max_dev << " (threshold " << threshold << ")";
        results.push_back({name, max_dev <= threshold, os.str()});
    }

    template <class F>
    void guarded(const std::string& name, F&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            results.push_back({name, false, std::string("exception: ") + e.what()});
        }
    }
};

void arith_suite(Suite& s, bool quick) {
    s.guarded("arith.phi_divisor_sum", [&] {
        long long bad = 0;
        const long long nmax = quick ? 60 : 10000;
        for (long long n = 1; n <= nmax; ++n) {
            long long sum = 0;
            for (long long d : divisors(n)) sum += euler_phi(d);
            if (sum != n) ++bad;
        }
        s.report("arith.phi_divisor_sum", bad == 0,
                 "sum_{d|n} phi(d) = n up to " + std::to_string(nmax) + ", " +
                     std::to_string(bad) + " failures");
    });
    s.guarded("arith.phi_star_sum", [&] {
        long long bad = 0;
        const long long nmax = quick ? 60 : 10000;
        for (long long q = 2; q <= nmax; ++q) {
            long long sum = 0;
            for (long long d : divisors(q))
                if (d > 1) sum += phi_star(d);
            if (sum != euler_phi(q) - 1) ++bad;
        }
        s.report("arith.phi_star_sum", bad == 0,
                 "sum_{d|q, d>1} phi*(d) = phi(q)-1 up to " + std::to_string(nmax) + ", " +
                     std::to_string(bad) + " failures");
    });
    s.guarded("arith.multiplicative", [&] {
        std::uint64_t state = 99;
        long long bad = 0;
        const int pairs = quick ? 60 : 400;
        for (int i = 0; i < pairs;) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            const long long m = static_cast<long long>((state >> 33) % 10000) + 1;
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            const long long n = static_cast<long long>((state >> 33) % 10000) + 1;
            if (gcd_ll(m, n) != 1) continue;
            ++i;
            if (moebius(m * n) != moebius(m) * moebius(n)) ++bad;
            if (euler_phi(m * n) != euler_phi(m) * euler_phi(n)) ++bad;
        }
        s.report("arith.multiplicative", bad == 0,
                 "mu/phi multiplicative on " + std::to_string(pairs) + " coprime pairs, " + std::to_string(bad) +
                     " failures");
    });
    s.guarded("arith.generator_span", [&] {
        const long long cap = quick ? 60 : 3000;
        long long bad = 0;
        for (long long q = 3; q <= cap; ++q) {
            std::set<long long> seen;
            std::vector<long long> current{1};
            for (const auto& [g, ord] : unit_group_generators(q)) {
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
            if (static_cast<long long>(seen.size()) != euler_phi(q)) ++bad;
        }
        s.report("arith.generator_span", bad == 0,
                 "generators span phi(q) residues up to q = " + std::to_string(cap) + ", " +
                     std::to_string(bad) + " failures");
    });
}

void character_suite(Suite& s, bool quick) {
    s.guarded("characters.counts", [&] {
        const long long cap = quick ? 60 : 200;
        long long bad = 0;
        for (long long q = 3; q <= cap; ++q) {
            const auto chars = all_characters(character_group(q));
            if (static_cast<long long>(chars.size()) != euler_phi(q)) ++bad;
            if (!chars[0].is_principal()) ++bad;
            long long even = 0;
            for (const auto& chi : chars) even += chi.is_even();
            if (even != euler_phi(q) / 2) ++bad;
        }
        s.report("characters.counts", bad == 0,
                 "phi(q) characters, half even, principal first, up to q = " +
                     std::to_string(cap));
    });
    s.guarded("characters.conductor_partition", [&] {
        const long long cap = quick ? 60 : 200;
        long long bad = 0;
        for (long long q = 3; q <= cap; ++q) {
            std::map<long long, long long> counts;
            for (const auto& chi : all_characters(character_group(q)))
                ++counts[chi.conductor()];
            for (long long d : divisors(q))
                if (counts[d] != phi_star(d)) ++bad;
        }
        s.report("characters.conductor_partition", bad == 0,
                 "#(f_chi = d) = phi*(d) up to q = " + std::to_string(cap) + ", " +
                     std::to_string(bad) + " failures");
    });
    s.guarded("characters.orthogonality", [&] {
        double max_dev = 0.0;
        const long long cap = quick ? 30 : 60;
        for (long long q = 3; q <= cap; ++q) {
            const auto chars = all_characters(character_group(q));
            for (int b = 0; b <= 1; ++b)
                for (int a = 0; a <= 1; ++a)
                    for (long long n1 = 1; n1 < q; ++n1) {
                        if (gcd_ll(n1, q) != 1) continue;
                        for (long long n2 = 1; n2 < q; ++n2) {
                            if (gcd_ll(n2, q) != 1) continue;
                            const double lhs = orthogonality_lhs(chars, b, a, n1, n2);
                            const double rhs = orthogonality_rhs(q, b, a, n1, n2);
                            max_dev = std::max(max_dev, std::abs(lhs - rhs));
                        }
                    }
        }
        s.report_dev("characters.orthogonality", max_dev, 1e-9);
    });
    s.guarded("characters.multiplicative", [&] {
        double max_dev = 0.0;
        for (long long q : {7LL, 16LL, 45LL}) {
            for (const auto& chi : all_characters(character_group(q))) {
                for (long long m = 1; m < q; ++m) {
                    if (gcd_ll(m, q) != 1) continue;
                    for (long long n = 1; n < q; ++n) {
                        if (gcd_ll(n, q) != 1) continue;
                        max_dev = std::max(max_dev, std::abs(chi.evaluate(m * n) -
                                                             chi.evaluate(m) * chi.evaluate(n)));
                    }
                }
            }
        }
        s.report_dev("characters.multiplicative", max_dev, 1e-12);
    });
    s.guarded("characters.parity_exact", [&] {
        long long bad = 0;
        for (long long q = 3; q <= 60; ++q) {
            for (const auto& chi : all_characters(character_group(q))) {
                const auto v = chi.evaluate(-1);
                if (v.imag() != 0.0) ++bad;
                if (v.real() != (chi.is_even() ? 1.0 : -1.0)) ++bad;
            }
        }
        s.report("characters.parity_exact", bad == 0,
                 "chi(-1) = +-1 exactly and matches parity, " + std::to_string(bad) +
                     " failures");
    });
}

void lfunc_suite(Suite& s, bool quick, int threads) {
    s.guarded("lfunc.dual_route_series", [&] {
        const long long cap = quick ? 40 : 150;
        double max_dev = 0.0;
        const long long N = 1000000;
        for (long long q = 3; q <= cap; ++q) {
            const SeriesTable table(q, N);
            const PsiTable psi(q);
            for (const auto& chi : all_characters(character_group(q))) {
                if (chi.is_principal()) continue;
                max_dev = std::max(max_dev, std::abs(table.eval(chi).value -
                                                     l_one_digamma(chi, psi).value));
            }
        }
        s.report_dev("lfunc.dual_route_series", max_dev, 1e-5);
    });
    s.guarded("lfunc.dual_route_induced", [&] {
        const long long cap = quick ? 40 : 150;
        GroupCache groups;
        PsiCache psis;
        double max_dev = 0.0;
        for (long long q = 3; q <= cap; ++q) {
            for (const auto& chi : all_characters(groups.get(q))) {
                if (chi.is_principal()) continue;
                max_dev = std::max(max_dev, std::abs(l_one(chi, groups, psis).value -
                                                     l_one_digamma(chi, psis.get(q)).value));
            }
        }
        s.report_dev("lfunc.dual_route_induced", max_dev, 1e-10);
    });
    s.guarded("lfunc.conjugation", [&] {
        GroupCache groups;
        PsiCache psis;
        double max_dev = 0.0;
        const long long cap = quick ? 40 : 150;
        for (long long q = 3; q <= cap; ++q) {
            for (const auto& chi : all_characters(groups.get(q))) {
                if (chi.is_principal()) continue;
                max_dev = std::max(max_dev,
                                   std::abs(l_one(chi.conjugate(), groups, psis).value -
                                            std::conj(l_one(chi, groups, psis).value)));
            }
        }
        s.report_dev("lfunc.conjugation", max_dev, 1e-10);
    });
    s.guarded("lfunc.nonvanishing", [&] {
        const long long cap = quick ? 60 : 2000;
        double min_abs = 1e300;
        for (long long q = 3; q <= cap; ++q) {
            const auto vals = l_one_all(*character_group(q), BatchMethod::automatic, threads);
            for (std::size_t i = 1; i < vals.size(); ++i)
                min_abs = std::min(min_abs, std::abs(vals[i].value));
        }
        std::ostringstream os;
        os << "min |L(1,chi)| = " << min_abs << " up to q = " << cap;
        s.report("lfunc.nonvanishing", min_abs > 1e-6, os.str());
    });
}

void moment_suite(Suite& s, bool quick, int threads) {
    s.guarded("moments.parity_decomposition", [&] {
        const long long cap = quick ? 60 : 200;
        double max_rel = 0.0;
        for (long long q = 3; q <= cap; ++q) {
            const auto g = character_group(q);
            const double even = negative_moment(g, Parity::even, 0, threads);
            const double odd = negative_moment(g, Parity::odd, 0, threads);
            const double all = negative_moment_all(g, 0, threads);
            if (all > 0.0) max_rel = std::max(max_rel, std::abs(even + odd - all) / all);
        }
        s.report_dev("moments.parity_decomposition", max_rel, 1e-9);
    });
    s.guarded("moments.conductor_sum_bound", [&] {
        // sum over even nonprincipal of 1/f_chi <= k/2 at prime powers
        std::vector<long long> targets;
        for (long long q = 3; q <= (quick ? 60 : 700); ++q)
            if (is_prime_power(q)) targets.push_back(q);
        if (!quick)
            for (long long q : {1024LL, 6561LL, 10007LL, 16384LL, 59049LL})
                targets.push_back(q);
        long long bad = 0;
        for (long long q : targets) {
            long long p = 0;
            int k = 0;
            is_prime_power(q, &p, &k);
            const auto g = character_group(q);
            double sum = 0.0;
            for (long long idx = 1; idx < g->character_count(); ++idx) {
                const auto e = g->index_exponents(idx);
                if (!g->is_even(e)) continue;
                sum += 1.0 / static_cast<double>(g->conductor_of(e));
            }
            if (!(sum <= k / 2.0 + 1e-9)) ++bad;
        }
        s.report("moments.conductor_sum_bound", bad == 0,
                 std::to_string(targets.size()) + " prime powers checked, " +
                     std::to_string(bad) + " failures");
    });
}

void lattice_suite(Suite& s, bool quick, int threads) {
    std::vector<long long> qs{5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49};
    if (quick) qs = {5, 7, 8, 9, 13, 16, 27};
    s.guarded("loglattice.biorthogonality", [&] {
        double max_dev = 0.0;
        for (long long q : qs) {
            const auto lat = build_lattice(q);
            const Eigen::MatrixXd prod = lat.basis * lat.dual.transpose();
            max_dev = std::max(
                max_dev,
                (prod - Eigen::MatrixXd::Identity(prod.rows(), prod.cols()))
                    .cwiseAbs()
                    .maxCoeff());
        }
        s.report_dev("loglattice.biorthogonality", max_dev, 1e-9);
    });
    s.guarded("loglattice.equal_dual_norms", [&] {
        double worst = 0.0;
        for (long long q : qs) {
            const auto lat = build_lattice(q);
            double mean = 0.0;
            for (int j = 0; j < lat.dual.rows(); ++j) mean += lat.dual_norm(j);
            mean /= lat.dual.rows();
            double var = 0.0;
            for (int j = 0; j < lat.dual.rows(); ++j) {
                const double d = lat.dual_norm(j) - mean;
                var += d * d;
            }
            worst = std::max(worst, std::sqrt(var / lat.dual.rows()) / mean);
        }
        s.report_dev("loglattice.equal_dual_norms", worst, 1e-9);
    });
    s.guarded("loglattice.dual_route", [&] {
        double worst = 0.0;
        for (long long q : qs) {
            const auto lat = build_lattice(q);
            const double algebra = lat.max_dual_norm();
            worst = std::max(worst,
                             std::abs(dual_norm_character(q, threads) - algebra) / algebra);
        }
        s.report_dev("loglattice.dual_route", worst, 1e-8);
    });
    s.guarded("loglattice.row_sums", [&] {
        double worst = 0.0;
        for (long long q : qs) {
            const auto lat = build_lattice(q);
            for (int row = 0; row < lat.basis.rows(); ++row)
                worst = std::max(worst, std::abs(lat.basis.row(row).sum()) /
                                            lat.basis.row(row).norm());
        }
        s.report_dev("loglattice.row_sums", worst, 1e-10);
    });
}

void sgp_suite(Suite& s, bool quick) {
    std::vector<long long> qs{5, 8, 9, 13, 27};
    const long long trials = quick ? 300 : 2000;
    s.guarded("sgp.decoder_equivalence", [&] {
        long long bad = 0;
        for (long long q : qs) {
            const auto lat = build_lattice(q);
            for (std::uint64_t t = 0; t < static_cast<std::uint64_t>(trials); ++t) {
                const auto out = run_trial(lat, 1.0, 4, 1000 + q, t);
                if (std::abs(out.margin - 0.5) <= 1e-12) continue;
                if (out.success != (out.margin < 0.5)) ++bad;
            }
        }
        s.report("sgp.decoder_equivalence", bad == 0,
                 std::to_string(trials) + " trials per q, " + std::to_string(bad) +
                     " mismatches");
    });
    s.guarded("sgp.scale_invariance", [&] {
        long long bad = 0;
        for (long long q : qs) {
            const auto lat = build_lattice(q);
            for (std::uint64_t t = 0; t < 200; ++t) {
                const auto a = run_trial(lat, 0.5, 3, 22, t);
                const auto b = run_trial(lat, 1.0, 3, 22, t);
                const auto c = run_trial(lat, 8.0, 3, 22, t);
                if (a.success != b.success || b.success != c.success) ++bad;
                if (a.margin != b.margin || b.margin != c.margin) ++bad;
            }
        }
        s.report("sgp.scale_invariance", bad == 0,
                 "success flags and margins bit-identical across r, " +
                     std::to_string(bad) + " mismatches");
    });
    s.guarded("sgp.exact_recovery", [&] {
        long long bad = 0;
        for (long long q : qs) {
            const auto lat = build_lattice(q);
            for (std::uint64_t t = 0; t < 100; ++t) {
                const auto [e, log_u] = sample_unit(lat, 1000000, 77, t);
                if (babai_round_off(log_u, lat) != e) ++bad;
            }
        }
        s.report("sgp.exact_recovery", bad == 0,
                 "noiseless unit recovery with E = 1e6, " + std::to_string(bad) +
                     " failures");
    });
    s.guarded("sgp.determinism", [&] {
        const auto lat = build_lattice(13);
        SgpConfig cfg;
        cfg.q = 13;
        cfg.trials = 500;
        cfg.seed = 99;
        cfg.E = 2;
        const auto a = monte_carlo(lat, cfg);
        SgpConfig cfg4 = cfg;
        cfg4.threads = 4;
        const auto b = monte_carlo(lat, cfg4);
        s.report("sgp.determinism",
                 a.successes == b.successes && a.margin_mean == b.margin_mean &&
                     a.margin_max == b.margin_max,
                 "identical report across thread counts");
    });
    s.guarded("sgp.bound_consistency", [&] {
        const auto lat = build_lattice(101);
        SgpConfig cfg;
        cfg.q = 101;
        cfg.trials = quick ? 500 : 2000;
        cfg.seed = 7;
        cfg.E = 1;
        const auto rep = monte_carlo(lat, cfg);
        bool ok = true;
        std::ostringstream os;
        if (rep.bound > 0.0) {
            const double slack = 3.0 * std::sqrt(rep.bound * (1.0 - rep.bound) /
                                                 static_cast<double>(cfg.trials));
            ok = rep.empirical_rate >= rep.bound - slack;
            os << "rate " << rep.empirical_rate << " vs bound " << rep.bound << " - slack "
               << slack;
        } else {
            os << "bound vacuous at q = 101";
        }
        s.report("sgp.bound_consistency", ok, os.str());
    });
}

void golden_suite(Suite& s, const std::string& golden_dir, int threads) {
    s.guarded("golden.moments", [&] {
        const auto gold = load_golden(golden_dir + "/moments.txt");
        double max_dev = 0.0;
        for (long long q : {101LL, 503LL, 1009LL, 5003LL, 10007LL}) {
            for (Parity parity : {Parity::even, Parity::odd}) {
                const auto rep = moment_report(q, parity, 0, threads);
                const std::string key = std::string("rel_dev_") + parity_name(parity) +
                                        "_b0_q" + std::to_string(q);
                max_dev = std::max(max_dev, std::abs(rep.rel_dev - golden_value(gold, key)));
            }
        }
        for (const auto& [p, k] : std::vector<std::pair<long long, int>>{
                 {101, 2}, {31, 3}, {3, 4}, {2, 7}}) {
            long long q = 1;
            for (int i = 0; i < k; ++i) q *= p;
            const auto rep = moment_report(q, Parity::even, 1, threads);
            const std::string key = "rel_dev_even_b1_p" + std::to_string(p) + "_k" +
                                    std::to_string(k);
            max_dev = std::max(max_dev, std::abs(rep.rel_dev - golden_value(gold, key)));
        }
        s.report_dev("golden.moments", max_dev, 1e-9);
    });
    s.guarded("golden.moebius_envelope", [&] {
        const auto gold = load_golden(golden_dir + "/moebius_envelope.txt");
        const double fitted_c = golden_value(gold, "fitted_C");
        double max_dev = 0.0;
        bool envelope_ok = fitted_c <= 10.0;
        for (long long q : {1LL, 2LL, 6LL})
            for (long long l : {1LL, 10LL, 100LL})
                for (double X : {1e3, 1e4}) {
                    const double dev =
                        std::abs(weighted_moebius_sum(q, l, X) - moebius_main_term(q));
                    const std::string key = "dev_q" + std::to_string(q) + "_l" +
                                            std::to_string(l) + "_X" +
                                            std::to_string(static_cast<long long>(X));
                    max_dev = std::max(max_dev, std::abs(dev - golden_value(gold, key)));
                    const double envelope =
                        std::pow(X, -0.5) + std::log(X) * std::log(X) / static_cast<double>(l);
                    if (dev > fitted_c * envelope) envelope_ok = false;
                }
        std::ostringstream os;
        os << "max golden drift " << max_dev << ", fitted C = " << fitted_c;
        s.report("golden.moebius_envelope", max_dev <= 1e-9 && envelope_ok, os.str());
    });
    s.guarded("golden.lattice_ratio", [&] {
        const auto gold = load_golden(golden_dir + "/lattice.txt");
        double max_dev = 0.0;
        double prev_eta = 1e300;
        bool decreasing = true;
        for (long long q : {101LL, 1009LL, 10007LL}) {
            const double norm = dual_norm_character(q, threads);
            const double ratio = norm / asymptotic_prediction(q);
            const std::string key = "ratio_char_q" + std::to_string(q);
            max_dev = std::max(max_dev, std::abs(ratio - golden_value(gold, key)));
            const double eta = std::abs(ratio - 1.0);
            if (eta >= prev_eta) decreasing = false;
            prev_eta = eta;
        }
        std::ostringstream os;
        os << "max golden drift " << max_dev << (decreasing ? ", eta decreasing" : ", eta NOT decreasing");
        s.report("golden.lattice_ratio", max_dev <= 1e-9 && decreasing, os.str());
    });
    s.guarded("golden.tail_profile", [&] {
        const auto gold = load_golden(golden_dir + "/sgp.txt");
        const auto lat = build_lattice(101);
        const auto pts = tail_profile(lat, 1.0, 100000, {1.0, 2.0, 4.0}, 424242, threads);
        double max_dev = 0.0;
        for (const auto& p : pts) {
            const std::string key =
                "tail_exceed_q101_t" + std::to_string(static_cast<int>(p.t));
            max_dev = std::max(max_dev,
                               std::abs(p.empirical_exceedance - golden_value(gold, key)));
        }
        s.report_dev("golden.tail_profile", max_dev, 1e-9);
    });
}

}  // namespace

std::vector<InvariantResult> run_selftest(bool quick, const std::string& golden_dir,
                                          int threads) {
    Suite s;
    arith_suite(s, quick);
    character_suite(s, quick);
    lfunc_suite(s, quick, threads);
    moment_suite(s, quick, threads);
    lattice_suite(s, quick, threads);
    sgp_suite(s, quick);
    if (!quick) golden_suite(s, golden_dir, threads);
    return s.results;
}

}  // namespace cyclo
