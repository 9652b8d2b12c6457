#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cyclomoment/loglattice.hpp"
#include "cyclomoment/rng.hpp"

namespace cyclo {

// Recovery experiment: the hidden element's log-embedding is drawn from the
// radial part of a complex Gaussian per embedding, a random cyclotomic unit
// is multiplied on (adding a lattice vector in log space), and Babai
// round-off against the dual basis must recover the unit exponents.
//
// The log-embedding of the Gaussian sample is ln r * 1 + w with w the r = 1
// log-radius vector.  Every dual row is orthogonal to the all-1 vector, so
// inner products with the duals are computed from w alone; success flags and
// margins are therefore bit-identical across r for a fixed seed.
struct SgpConfig {
    long long q = 0;
    double r = 1.0;       // Gaussian standard deviation
    long long E = 1;      // unit exponents drawn uniformly from [-E, E]
    long long trials = 1;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct SgpReport {
    SgpConfig config;
    long long successes = 0;
    double empirical_rate = 0.0;
    double t_star = 0.0;  // 1 / (2 max_j ||b_j^v||)
    // 1 - (phi(q) - 2) exp(-t_star / 2); may be <= 0 (vacuous at small q).
    // Valid conditionally on t_star exceeding the (unspecified) universal
    // threshold of the tail inequality; reported, never enforced.
    double bound = 0.0;
    bool bound_vacuous = false;
    double margin_min = 0.0;
    double margin_mean = 0.0;
    double margin_max = 0.0;  // margin = max_j |<Log g, b_j^v>| per trial
};

// Log-embedding sample of the hidden element: component i is
// ln sqrt(X_i^2 + X_i'^2) with X_i, X_i' independent N(0, r^2); length
// phi(q)/2.  A zero radius (probability-zero draw) is re-sampled.
std::vector<double> sample_log_g(long long q, double r, std::uint64_t seed,
                                 std::uint64_t trial);

// The r = 1 log-radius vector (sample_log_g minus the ln r shift).
std::vector<double> sample_log_radius(long long dim, std::uint64_t seed,
                                      std::uint64_t trial);

// Uniform exponents e in [-E, E]^{d-1} and the lattice vector sum_j e_j b_j.
std::pair<std::vector<long long>, Eigen::VectorXd> sample_unit(const LogUnitLattice& lat,
                                                               long long E,
                                                               std::uint64_t seed,
                                                               std::uint64_t trial);

// Component j = nearest integer to <target, b_j^v>; half-integer ties round
// to even (probability-zero, fixed for determinism).
std::vector<long long> babai_round_off(const Eigen::VectorXd& target,
                                       const LogUnitLattice& lat);

struct TrialOutcome {
    bool success = false;
    double margin = 0.0;
};

TrialOutcome run_trial(const LogUnitLattice& lat, double r, long long E,
                       std::uint64_t seed, std::uint64_t trial);

SgpReport monte_carlo(const LogUnitLattice& lat, const SgpConfig& config);

struct TailPoint {
    double t = 0.0;
    double empirical_exceedance = 0.0;  // freq of max_j |<Log g, b_j^v/||b_j^v||>| >= t
    double bound_value = 0.0;           // (phi(q) - 2) exp(-t/2)
};

std::vector<TailPoint> tail_profile(const LogUnitLattice& lat, double r, long long trials,
                                    const std::vector<double>& t_grid, std::uint64_t seed,
                                    int threads = 1);

}  // namespace cyclo
