#include "cyclomoment/sgp.hpp"

#include <cmath>
#include <stdexcept>

#include "cyclomoment/parallel.hpp"

namespace cyclo {

namespace {

// coordinate layout inside a trial's stream: gaussians at [0, d),
// unit exponents at [d, 2d - 1)
std::vector<double> log_radius_vector(long long dim, const CounterRng& rng) {
    std::vector<double> w(dim);
    for (long long i = 0; i < dim; ++i) {
        const auto coord = static_cast<std::uint32_t>(i);
        double radius = 0.0;
        for (std::uint32_t slot = 0;; ++slot) {
            const auto [x, xp] = rng.normal_pair(coord, slot);
            radius = std::hypot(x, xp);
            if (radius > 0.0) break;  // zero radius: re-sample
        }
        w[i] = std::log(radius);
    }
    return w;
}

}  // namespace

std::vector<double> sample_log_radius(long long dim, std::uint64_t seed,
                                      std::uint64_t trial) {
    if (dim < 1) throw std::invalid_argument("sample_log_radius: dim must be >= 1");
    return log_radius_vector(dim, CounterRng(seed, trial));
}

std::vector<double> sample_log_g(long long q, double r, std::uint64_t seed,
                                 std::uint64_t trial) {
    if (!(r > 0.0)) throw std::invalid_argument("sample_log_g: r must be > 0");
    const long long dim = euler_phi(q) / 2;
    std::vector<double> w = sample_log_radius(dim, seed, trial);
    const double shift = std::log(r);
    for (double& v : w) v += shift;
    return w;
}

std::pair<std::vector<long long>, Eigen::VectorXd> sample_unit(const LogUnitLattice& lat,
                                                               long long E,
                                                               std::uint64_t seed,
                                                               std::uint64_t trial) {
    if (E < 0) throw std::invalid_argument("sample_unit: E must be >= 0");
    const int d = lat.dim();
    const CounterRng rng(seed, trial);
    std::vector<long long> e(d - 1, 0);
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(d - 1);
    if (E > 0) {
        for (int j = 0; j < d - 1; ++j) {
            e[j] = rng.uniform_int(-E, E, static_cast<std::uint32_t>(d + j), 0);
            coeff[j] = static_cast<double>(e[j]);
        }
    }
    Eigen::VectorXd log_u = lat.basis.transpose() * coeff;
    return {std::move(e), std::move(log_u)};
}

std::vector<long long> babai_round_off(const Eigen::VectorXd& target,
                                       const LogUnitLattice& lat) {
    if (target.size() != lat.dim())
        throw std::invalid_argument("babai_round_off: target length must be phi(q)/2");
    const Eigen::VectorXd y = lat.dual * target;
    std::vector<long long> out(y.size());
    for (Eigen::Index j = 0; j < y.size(); ++j)
        out[j] = static_cast<long long>(std::nearbyint(y[j]));
    return out;
}

TrialOutcome run_trial(const LogUnitLattice& lat, double r, long long E,
                       std::uint64_t seed, std::uint64_t trial) {
    if (!(r > 0.0)) throw std::invalid_argument("run_trial: r must be > 0");
    if (E < 0) throw std::invalid_argument("run_trial: E must be >= 0");
    const int d = lat.dim();
    const CounterRng rng(seed, trial);

    const std::vector<double> w = log_radius_vector(d, rng);
    Eigen::VectorXd wv = Eigen::Map<const Eigen::VectorXd>(w.data(), d);

    std::vector<long long> e(d - 1, 0);
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(d - 1);
    if (E > 0) {
        for (int j = 0; j < d - 1; ++j) {
            e[j] = rng.uniform_int(-E, E, static_cast<std::uint32_t>(d + j), 0);
            coeff[j] = static_cast<double>(e[j]);
        }
    }

    // Log g' = Log g + Log u; the ln r component of Log g lies along the
    // all-1 vector and is invisible to the dual rows, so the decode and the
    // margin are computed from the r-free part
    const Eigen::VectorXd target = wv + lat.basis.transpose() * coeff;
    const Eigen::VectorXd decoded = lat.dual * target;
    const Eigen::VectorXd noise = lat.dual * wv;

    TrialOutcome out;
    out.margin = noise.size() > 0 ? noise.cwiseAbs().maxCoeff() : 0.0;
    out.success = true;
    for (Eigen::Index j = 0; j < decoded.size(); ++j) {
        if (static_cast<long long>(std::nearbyint(decoded[j])) != e[j]) {
            out.success = false;
            break;
        }
    }
    return out;
}

SgpReport monte_carlo(const LogUnitLattice& lat, const SgpConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
    if (config.q != lat.q)
        throw std::invalid_argument("monte_carlo: config modulus does not match lattice");

    SgpReport rep;
    rep.config = config;

    const long long trials = config.trials;
    std::vector<std::uint8_t> ok(trials, 0);
    std::vector<double> margins(trials, 0.0);
    parallel_for(trials, config.threads, [&](std::size_t t) {
        const TrialOutcome o = run_trial(lat, config.r, config.E, config.seed, t);
        ok[t] = o.success ? 1 : 0;
        margins[t] = o.margin;
    });

    double msum = 0.0;
    rep.margin_min = margins[0];
    rep.margin_max = margins[0];
    for (long long t = 0; t < trials; ++t) {
        rep.successes += ok[t];
        msum += margins[t];
        rep.margin_min = std::min(rep.margin_min, margins[t]);
        rep.margin_max = std::max(rep.margin_max, margins[t]);
    }
    rep.margin_mean = msum / static_cast<double>(trials);
    rep.empirical_rate = static_cast<double>(rep.successes) / static_cast<double>(trials);

    rep.t_star = 1.0 / (2.0 * lat.max_dual_norm());
    const double phi = static_cast<double>(euler_phi(lat.q));
    rep.bound = 1.0 - (phi - 2.0) * std::exp(-rep.t_star / 2.0);
    rep.bound_vacuous = !(rep.bound > 0.0);
    return rep;
}

std::vector<TailPoint> tail_profile(const LogUnitLattice& lat, double r, long long trials,
                                    const std::vector<double>& t_grid, std::uint64_t seed,
                                    int threads) {
    if (trials < 1) throw std::invalid_argument("tail_profile: trials must be >= 1");
    for (double t : t_grid)
        if (!(t > 0.0)) throw std::invalid_argument("tail_profile: t values must be > 0");
    (void)r;  // the normalized-dual margins are r-free (all-1 shift drops out)

    const int d = lat.dim();
    Eigen::MatrixXd unit_dual = lat.dual;
    for (Eigen::Index j = 0; j < unit_dual.rows(); ++j) unit_dual.row(j).normalize();

    std::vector<double> margins(trials, 0.0);
    parallel_for(trials, threads, [&](std::size_t t) {
        const std::vector<double> w = sample_log_radius(d, seed, t);
        const Eigen::Map<const Eigen::VectorXd> wv(w.data(), d);
        const Eigen::VectorXd y = unit_dual * wv;
        margins[t] = y.cwiseAbs().maxCoeff();
    });

    const double phi = static_cast<double>(euler_phi(lat.q));
    std::vector<TailPoint> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        long long exceed = 0;
        for (double m : margins)
            if (m >= t) ++exceed;
        out.push_back({t, static_cast<double>(exceed) / static_cast<double>(trials),
                       (phi - 2.0) * std::exp(-t / 2.0)});
    }
    return out;
}

}  // namespace cyclo
