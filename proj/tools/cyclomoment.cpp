// cyclomoment -- negative square moments of L(1,chi), the log-cyclotomic-unit
// lattice, and the short-generator recovery experiment.
//
// Subcommands: moments, weighted-sum, dual-norms, sgp, tail-profile,
// orthogonality-check, selftest.  Output is JSON (one object per row) or CSV;
// floats carry 17 significant digits.  Runs are deterministic for a fixed
// seed, and numeric fields are independent of --threads.
//
// Exit codes: 0 success, 1 invariant/selftest failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cyclomoment/golden.hpp"
#include "cyclomoment/lfunc.hpp"
#include "cyclomoment/loglattice.hpp"
#include "cyclomoment/moments.hpp"
#include "cyclomoment/parallel.hpp"
#include "cyclomoment/report.hpp"
#include "cyclomoment/selftest.hpp"
#include "cyclomoment/sgp.hpp"

using namespace cyclo;

namespace {

struct Output {
    std::string format = "json";
    std::string path;  // empty: stdout

    void emit(const std::vector<ReportRow>& rows) const {
        std::ostringstream buf;
        if (format == "csv")
            write_rows_csv(buf, rows);
        else
            write_rows_json(buf, rows);
        if (path.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream out(path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open output file " + path);
            out << buf.str();
        }
    }
};

void add_output_flags(CLI::App* cmd, Output& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", out.path, "Output path (default stdout)");
}

std::vector<long long> primes_in(long long lo, long long hi) {
    std::vector<long long> out;
    for (long long n = std::max<long long>(lo, 2); n <= hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

long long parse_prime_power(long long q, long long p, int k, bool need_prime_power,
                            const char* cmd) {
    if (q > 0 && p > 0)
        throw CLI::ValidationError(cmd, "give either --q or --p/--k, not both");
    if (p > 0) {
        if (!is_prime(p)) throw CLI::ValidationError(cmd, "--p must be prime");
        if (k < 1) throw CLI::ValidationError(cmd, "--k must be >= 1");
        long long qq = 1;
        for (int i = 0; i < k; ++i) qq *= p;
        return qq;
    }
    if (q <= 0) throw CLI::ValidationError(cmd, "a modulus is required (--q or --p/--k)");
    if (need_prime_power && !is_prime_power(q))
        throw CLI::ValidationError(cmd, "q must be a prime power");
    return q;
}

ReportRow moment_row(const MomentReport& rep) {
    ReportRow row;
    row.add("q", rep.q)
        .add("kind", std::string("moment"))
        .add("parity", std::string(parity_name(rep.parity)))
        .add("weighted", rep.weighted)
        .add("sum", rep.sum)
        .add("main_term", rep.main_term)
        .add("rel_dev", rep.rel_dev)
        .add("abs_err_num", rep.abs_err_num);
    return row;
}

int cmd_moments(long long q, long long p, int k, long long primes_from,
                long long primes_to, const std::string& parity, int weighted,
                int threads, const Output& out) {
    std::vector<long long> moduli;
    if (primes_from > 0 || primes_to > 0) {
        if (q > 0 || p > 0)
            throw CLI::ValidationError("moments", "prime range excludes --q/--p");
        if (primes_from < 2 || primes_to < primes_from)
            throw CLI::ValidationError("moments", "bad prime range");
        moduli = primes_in(primes_from, primes_to);
    } else {
        moduli.push_back(parse_prime_power(q, p, k, weighted != 0, "moments"));
    }
    std::vector<Parity> parities;
    if (parity == "even")
        parities = {Parity::even};
    else if (parity == "odd")
        parities = {Parity::odd};
    else
        parities = {Parity::even, Parity::odd};

    std::vector<ReportRow> rows;
    for (long long modulus : moduli) {
        if (modulus < 3)
            throw CLI::ValidationError("moments", "modulus must be >= 3");
        if (weighted && !is_prime_power(modulus))
            throw CLI::ValidationError("moments",
                                       "--weighted needs a prime-power modulus");
        for (Parity par : parities)
            rows.push_back(moment_row(moment_report(modulus, par, weighted, threads)));
    }
    out.emit(rows);
    return 0;
}

int cmd_weighted_sum(long long q, long long l, double X, double eps, bool grid,
                     const Output& out) {
    std::vector<ReportRow> rows;
    auto push = [&](long long qq, long long ll, double XX) {
        const double sum = weighted_moebius_sum(qq, ll, XX, eps);
        const double main = moebius_main_term(qq);
        const double envelope =
            std::pow(XX, -0.5) + std::log(XX) * std::log(XX) / static_cast<double>(ll);
        ReportRow row;
        row.add("q", qq)
            .add("kind", std::string("weighted_moebius_sum"))
            .add("l", ll)
            .add("X", XX)
            .add("sum", sum)
            .add("main_term", main)
            .add("abs_dev", std::abs(sum - main))
            .add("envelope", envelope);
        rows.push_back(row);
    };
    if (grid) {
        for (long long qq : {1LL, 2LL, 6LL})
            for (long long ll : {1LL, 10LL, 100LL})
                for (double XX : {1e3, 1e4}) push(qq, ll, XX);
    } else {
        push(q, l, X);
    }
    out.emit(rows);
    return 0;
}

int cmd_dual_norms(long long q, long long p, int k, bool skip_algebra, double C,
                   int threads, const Output& out) {
    const long long modulus = parse_prime_power(q, p, k, true, "dual-norms");
    if (modulus < 5)
        throw CLI::ValidationError("dual-norms", "q must be a prime power >= 5");
    long long pp = 0;
    int kk = 0;
    is_prime_power(modulus, &pp, &kk);

    const double character_norm = dual_norm_character(modulus, threads);
    const double prediction = asymptotic_prediction(modulus);

    ReportRow row;
    row.add("q", modulus)
        .add("kind", std::string("dual_norms"))
        .add("p", pp)
        .add("k", kk)
        .add("dim", euler_phi(modulus) / 2)
        .add("norm_character", character_norm);
    if (skip_algebra) {
        row.add("norm_algebra", std::nan(""));
    } else {
        const auto lat = build_lattice(modulus);
        row.add("norm_algebra", lat.max_dual_norm());
    }
    row.add("asymptotic", prediction).add("ratio_to_asymptotic", character_norm / prediction);
    row.add("asymptotic_note",
            std::string(kk >= 2 ? "prime-power asymptotics assume no exceptional zero"
                                : "unconditional at primes"));
    if (C > 0.0)
        row.add("cdpr_C", C).add("cdpr_bound", cdpr_upper_bound(modulus, C));
    else
        row.add("cdpr_C", std::nan("")).add("cdpr_bound", std::nan(""));
    out.emit({row});
    return 0;
}

int cmd_sgp(long long q, long long p, int k, double r, long long E, long long trials,
            std::uint64_t seed, int threads, const Output& out) {
    const long long modulus = parse_prime_power(q, p, k, true, "sgp");
    if (modulus < 5) throw CLI::ValidationError("sgp", "q must be a prime power >= 5");
    const auto lat = build_lattice(modulus);
    SgpConfig cfg;
    cfg.q = modulus;
    cfg.r = r;
    cfg.E = E;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.threads = threads;
    const auto rep = monte_carlo(lat, cfg);

    ReportRow row;
    row.add("q", modulus)
        .add("kind", std::string("sgp"))
        .add("trials", rep.config.trials)
        .add("seed", static_cast<long long>(rep.config.seed))
        .add("r", rep.config.r)
        .add("E", rep.config.E)
        .add("successes", rep.successes)
        .add("empirical_rate", rep.empirical_rate)
        .add("t_star", rep.t_star)
        .add("bound", rep.bound)
        .add("bound_vacuous", static_cast<long long>(rep.bound_vacuous ? 1 : 0))
        .add("bound_note",
             std::string(std::string("conditional on t_star exceeding the universal "
                                     "threshold T (unspecified); vacuous when bound <= 0") +
                         (is_prime(modulus)
                              ? ""
                              : "; prime-power asymptotics assume no exceptional zero")))
        .add("margin_min", rep.margin_min)
        .add("margin_mean", rep.margin_mean)
        .add("margin_max", rep.margin_max);
    out.emit({row});
    return 0;
}

int cmd_tail_profile(long long q, long long p, int k, double r, long long trials,
                     std::uint64_t seed, const std::string& t_grid_csv, int threads,
                     const Output& out) {
    const long long modulus = parse_prime_power(q, p, k, true, "tail-profile");
    if (modulus < 5)
        throw CLI::ValidationError("tail-profile", "q must be a prime power >= 5");
    std::vector<double> t_grid;
    std::stringstream ss(t_grid_csv);
    std::string item;
    while (std::getline(ss, item, ',')) t_grid.push_back(std::stod(item));
    const auto lat = build_lattice(modulus);
    const auto pts = tail_profile(lat, r, trials, t_grid, seed, threads);
    std::vector<ReportRow> rows;
    for (const auto& pt : pts) {
        ReportRow row;
        row.add("q", modulus)
            .add("kind", std::string("tail_profile"))
            .add("trials", trials)
            .add("seed", static_cast<long long>(seed))
            .add("t", pt.t)
            .add("empirical_exceedance", pt.empirical_exceedance)
            .add("bound_value", pt.bound_value);
        rows.push_back(row);
    }
    out.emit(rows);
    return 0;
}

int cmd_orthogonality(long long q, const Output& out) {
    if (q < 3) throw CLI::ValidationError("orthogonality-check", "q must be >= 3");
    const auto chars = all_characters(character_group(q));
    double max_dev = 0.0;
    long long pairs = 0;
    for (int b = 0; b <= 1; ++b)
        for (int a = 0; a <= 1; ++a)
            for (long long n1 = 1; n1 < q; ++n1) {
                if (gcd_ll(n1, q) != 1) continue;
                for (long long n2 = 1; n2 < q; ++n2) {
                    if (gcd_ll(n2, q) != 1) continue;
                    const double lhs = orthogonality_lhs(chars, b, a, n1, n2);
                    const double rhs = orthogonality_rhs(q, b, a, n1, n2);
                    max_dev = std::max(max_dev, std::abs(lhs - rhs));
                    ++pairs;
                }
            }
    ReportRow row;
    row.add("q", q)
        .add("kind", std::string("orthogonality_check"))
        .add("cases", pairs)
        .add("max_abs_diff", max_dev)
        .add("pass", static_cast<long long>(max_dev <= 1e-9 ? 1 : 0));
    out.emit({row});
    return max_dev <= 1e-9 ? 0 : 1;
}

int cmd_selftest(bool quick, const std::string& golden_dir, int threads) {
    const auto results = run_selftest(quick, golden_dir, threads);
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("%-36s %s  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    std::printf("selftest: %zu invariants, %s\n", results.size(),
                all_pass ? "all pass" : "FAILURES present");
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"negative square moments of Dirichlet L(1,chi), log-cyclotomic-unit "
                 "lattices, and short-generator recovery experiments"};
    app.require_subcommand(1);

    int threads = env_default_threads();
    app.add_option("--threads", threads, "Worker threads (or CYCLOMOMENT_THREADS)")
        ->check(CLI::PositiveNumber);
    app.fallthrough();  // parent flags (--threads) may follow the subcommand

    // moments
    auto* mom = app.add_subcommand("moments", "Negative square moment vs its main term");
    long long mom_q = 0, mom_p = 0, mom_from = 0, mom_to = 0;
    int mom_k = 1, mom_weighted = 0;
    std::string mom_parity = "even";
    Output mom_out;
    mom->add_option("--q", mom_q, "Modulus");
    mom->add_option("--p", mom_p, "Prime base (with --k)");
    mom->add_option("--k", mom_k, "Prime-power exponent");
    mom->add_option("--primes-from", mom_from, "Range start: one row per prime");
    mom->add_option("--primes-to", mom_to, "Range end");
    mom->add_option("--parity", mom_parity, "even | odd | both")
        ->check(CLI::IsMember({"even", "odd", "both"}))
        ->capture_default_str();
    mom->add_flag("--weighted", mom_weighted, "Weight terms by 1/conductor (prime powers)");
    add_output_flags(mom, mom_out);

    // weighted-sum
    auto* wsum = app.add_subcommand("weighted-sum",
                                    "Exponentially weighted double Moebius sum");
    long long ws_q = 1, ws_l = 1;
    double ws_X = 1e4, ws_eps = 1e-12;
    bool ws_grid = false;
    Output ws_out;
    wsum->add_option("--q", ws_q, "Coprimality modulus (q >= 1)")->capture_default_str();
    wsum->add_option("--l", ws_l, "Congruence modulus l >= 1")->capture_default_str();
    wsum->add_option("--X", ws_X, "Exponential weight scale (X > 1)")->capture_default_str();
    wsum->add_option("--eps-trunc", ws_eps, "Truncation threshold")->capture_default_str();
    wsum->add_flag("--grid", ws_grid, "Run the q/l/X sample grid instead");
    add_output_flags(wsum, ws_out);

    // dual-norms
    auto* dn = app.add_subcommand("dual-norms",
                                  "Dual-basis norm: linear algebra vs character formula");
    long long dn_q = 0, dn_p = 0;
    int dn_k = 1;
    bool dn_skip = false;
    double dn_C = 0.0;
    Output dn_out;
    dn->add_option("--q", dn_q, "Prime-power modulus >= 5");
    dn->add_option("--p", dn_p, "Prime base (with --k)");
    dn->add_option("--k", dn_k, "Prime-power exponent");
    dn->add_flag("--skip-algebra", dn_skip, "Skip the O(d^3) dual matrix build");
    dn->add_option("--C", dn_C, "Also report the comparison bound 2C sqrt(k) ln(q)/sqrt(q)");
    add_output_flags(dn, dn_out);

    // sgp
    auto* sgp = app.add_subcommand("sgp", "Short-generator recovery experiment");
    long long sgp_q = 0, sgp_p = 0, sgp_E = 2, sgp_trials = 100;
    int sgp_k = 1;
    double sgp_r = 1.0;
    std::uint64_t sgp_seed = 0;
    Output sgp_out;
    sgp->add_option("--q", sgp_q, "Prime-power modulus >= 5");
    sgp->add_option("--p", sgp_p, "Prime base (with --k)");
    sgp->add_option("--k", sgp_k, "Prime-power exponent");
    sgp->add_option("--r", sgp_r, "Gaussian standard deviation")->capture_default_str();
    sgp->add_option("--E", sgp_E, "Unit exponent bound")->capture_default_str();
    sgp->add_option("--trials", sgp_trials, "Monte-Carlo trials")->capture_default_str();
    sgp->add_option("--seed", sgp_seed, "Random seed")->capture_default_str();
    add_output_flags(sgp, sgp_out);

    // tail-profile
    auto* tail = app.add_subcommand("tail-profile",
                                    "Exceedance of normalized dual inner products vs the "
                                    "tail bound");
    long long tp_q = 0, tp_p = 0, tp_trials = 10000;
    int tp_k = 1;
    double tp_r = 1.0;
    std::uint64_t tp_seed = 0;
    std::string tp_grid = "0.5,1,2,4,8";
    Output tp_out;
    tail->add_option("--q", tp_q, "Prime-power modulus >= 5");
    tail->add_option("--p", tp_p, "Prime base (with --k)");
    tail->add_option("--k", tp_k, "Prime-power exponent");
    tail->add_option("--r", tp_r, "Gaussian standard deviation")->capture_default_str();
    tail->add_option("--trials", tp_trials, "Monte-Carlo trials")->capture_default_str();
    tail->add_option("--seed", tp_seed, "Random seed")->capture_default_str();
    tail->add_option("--t-grid", tp_grid, "Comma-separated t values")->capture_default_str();
    add_output_flags(tail, tp_out);

    // orthogonality-check
    auto* orth = app.add_subcommand("orthogonality-check",
                                    "Character orthogonality: direct sum vs divisor sum");
    long long orth_q = 0;
    Output orth_out;
    orth->add_option("--q", orth_q, "Modulus >= 3")->required();
    add_output_flags(orth, orth_out);

    // selftest
    auto* st = app.add_subcommand("selftest", "Run the invariant suites of all modules");
    bool st_quick = false;
    std::string st_golden = "golden";
    st->add_flag("--quick", st_quick, "Small-modulus subset only (q <= 60)");
    st->add_option("--golden-dir", st_golden, "Directory of committed golden values")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(mom))
            return cmd_moments(mom_q, mom_p, mom_k, mom_from, mom_to, mom_parity,
                               mom_weighted, threads, mom_out);
        if (app.got_subcommand(wsum))
            return cmd_weighted_sum(ws_q, ws_l, ws_X, ws_eps, ws_grid, ws_out);
        if (app.got_subcommand(dn))
            return cmd_dual_norms(dn_q, dn_p, dn_k, dn_skip, dn_C, threads, dn_out);
        if (app.got_subcommand(sgp))
            return cmd_sgp(sgp_q, sgp_p, sgp_k, sgp_r, sgp_E, sgp_trials, sgp_seed,
                           threads, sgp_out);
        if (app.got_subcommand(tail))
            return cmd_tail_profile(tp_q, tp_p, tp_k, tp_r, tp_trials, tp_seed, tp_grid,
                                    threads, tp_out);
        if (app.got_subcommand(orth)) return cmd_orthogonality(orth_q, orth_out);
        if (app.got_subcommand(st)) return cmd_selftest(st_quick, st_golden, threads);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
