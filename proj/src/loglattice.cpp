#include "cyclomoment/loglattice.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cyclo {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kTwoSqrt15OverPi = 2.0 * std::sqrt(15.0) / kPi;  // = 2.46561777...

void require_prime_power_ge5(long long q, long long* p_out, int* k_out, const char* who) {
    long long p = 0;
    int k = 0;
    if (!is_prime_power(q, &p, &k))
        throw std::invalid_argument(std::string(who) + ": q must be a prime power, got " +
                                    std::to_string(q));
    if (q < 5)
        throw std::invalid_argument(std::string(who) +
                                    ": q in {3,4} has an empty unit basis; need q >= 5");
    if (p_out) *p_out = p;
    if (k_out) *k_out = k;
}

Eigen::MatrixXd solve_dual(const Eigen::MatrixXd& basis, Eigen::MatrixXd& gram_out,
                           double* rcond_out) {
    gram_out = basis * basis.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(gram_out);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("build_lattice: Gram matrix is not numerically SPD");
    const double rc = llt.rcond();
    if (rc < 1e-12)
        throw std::runtime_error("build_lattice: Gram matrix too ill-conditioned (rcond " +
                                 std::to_string(rc) + ")");
    if (rcond_out) *rcond_out = rc;
    // rows of G^{-1} B satisfy (G^{-1} B) B^T = I
    return llt.solve(basis);
}

}  // namespace

double LogUnitLattice::max_dual_norm() const {
    double mx = 0.0;
    for (int j = 0; j < dual.rows(); ++j) mx = std::max(mx, dual.row(j).norm());
    return mx;
}

std::vector<long long> group_reps(long long q) {
    require_prime_power_ge5(q, nullptr, nullptr, "group_reps");
    std::vector<long long> reps;
    for (long long a = 1; 2 * a < q; ++a)
        if (gcd_ll(a, q) == 1) reps.push_back(a);
    return reps;
}

LogUnitLattice build_lattice(long long q) {
    LogUnitLattice lat;
    require_prime_power_ge5(q, &lat.p, &lat.k, "build_lattice");
    lat.q = q;
    lat.reps = group_reps(q);
    const int d = lat.dim();

    std::vector<double> sine(q, 0.0);  // s(a) = sin(pi a / q); s(q-a) = s(a)
    for (long long a = 1; a < q; ++a)
        sine[a] = std::sin(kPi * static_cast<double>(a) / static_cast<double>(q));

    lat.basis.resize(d - 1, d);
    for (int row = 0; row < d - 1; ++row) {
        const long long j = lat.reps[row + 1];
        for (int col = 0; col < d; ++col) {
            const long long i = lat.reps[col];
            lat.basis(row, col) = std::log(sine[(i * j) % q] / sine[i]);
        }
    }
    lat.dual = solve_dual(lat.basis, lat.gram, &lat.rcond);
    return lat;
}

double dual_norm_character(long long q, int threads) {
    require_prime_power_ge5(q, nullptr, nullptr, "dual_norm_character");
    const double moment =
        negative_moment(character_group(q), Parity::even, /*weight_bit=*/1, threads);
    return std::sqrt(8.0 / static_cast<double>(euler_phi(q)) * moment);
}

double asymptotic_prediction(long long q) {
    long long p = 0;
    int k = 0;
    require_prime_power_ge5(q, &p, &k, "asymptotic_prediction");
    return kTwoSqrt15OverPi *
           std::sqrt(static_cast<double>(k) / static_cast<double>(euler_phi(q)));
}

double cdpr_upper_bound(long long q, double C) {
    long long p = 0;
    int k = 0;
    require_prime_power_ge5(q, &p, &k, "cdpr_upper_bound");
    if (!(C > 0.0)) throw std::invalid_argument("cdpr_upper_bound: C must be > 0");
    return 2.0 * C * std::sqrt(static_cast<double>(k)) * std::log(static_cast<double>(q)) /
           std::sqrt(static_cast<double>(q));
}

void save_matrix(const std::string& path, long long q, const Eigen::MatrixXd& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_matrix: cannot open " + path);
    out << q << ' ' << m.cols() << '\n';
    char buf[32];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
            out << buf << (c + 1 == m.cols() ? '\n' : ' ');
        }
    }
    if (!out) throw std::runtime_error("save_matrix: write failed for " + path);
}

Eigen::MatrixXd load_matrix(const std::string& path, long long* q_out) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_matrix: cannot open " + path);
    long long q = 0, d = 0;
    if (!(in >> q >> d) || q < 5 || d < 2)
        throw std::runtime_error("load_matrix: bad header in " + path);
    Eigen::MatrixXd m(d - 1, d);
    for (Eigen::Index r = 0; r < d - 1; ++r)
        for (Eigen::Index c = 0; c < d; ++c)
            if (!(in >> m(r, c)))
                throw std::runtime_error("load_matrix: truncated matrix in " + path);
    if (q_out) *q_out = q;
    return m;
}

LogUnitLattice lattice_from_files(const std::string& basis_path,
                                  const std::string& dual_path) {
    long long q = 0;
    Eigen::MatrixXd basis = load_matrix(basis_path, &q);
    LogUnitLattice lat;
    require_prime_power_ge5(q, &lat.p, &lat.k, "lattice_from_files");
    lat.q = q;
    lat.reps = group_reps(q);
    if (basis.cols() != lat.dim())
        throw std::runtime_error("lattice_from_files: basis dimension does not match q");
    lat.basis = std::move(basis);
    if (!dual_path.empty()) {
        long long qd = 0;
        lat.dual = load_matrix(dual_path, &qd);
        if (qd != q || lat.dual.rows() != lat.basis.rows())
            throw std::runtime_error("lattice_from_files: dual file does not match basis");
        lat.gram = lat.basis * lat.basis.transpose();
        Eigen::LLT<Eigen::MatrixXd> llt(lat.gram);
        lat.rcond = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
    } else {
        lat.dual = solve_dual(lat.basis, lat.gram, &lat.rcond);
    }
    return lat;
}

}  // namespace cyclo
