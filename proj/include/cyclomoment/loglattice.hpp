#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cyclomoment/moments.hpp"

namespace cyclo {

// Log-embedding lattice of the cyclotomic units of Q(zeta_q), q = p^k >= 5.
// Coordinates are indexed by representatives of G = (Z/q)* / {+-1} (smallest
// positive member of {a, q-a}, ascending, 1 first).  The basis rows are
//   b_j[i] = log( s(i j mod q) / s(i) ),   s(a) = sin(pi a / q),
// for j in reps \ {1}: the log absolute values of the unit (zeta^j-1)/(zeta-1)
// under the embeddings zeta -> zeta^i.  Each row sums to 0.
struct LogUnitLattice {
    long long q = 0;
    long long p = 0;
    int k = 0;
    std::vector<long long> reps;  // phi(q)/2 entries, reps[0] = 1
    Eigen::MatrixXd basis;        // (d-1) x d, row j-1 belongs to reps[j]
    Eigen::MatrixXd gram;         // basis * basis^T
    Eigen::MatrixXd dual;         // rows b_j^v with <b_i, b_j^v> = delta_ij
    double rcond = 0.0;           // reciprocal condition estimate of the Gram factor

    int dim() const { return static_cast<int>(reps.size()); }
    double dual_norm(int row) const { return dual.row(row).norm(); }
    double max_dual_norm() const;
};

// Representatives of (Z/q)*/{+-1} for prime powers q >= 5; q in {3,4} have an
// empty unit basis and are rejected, as is composite q.
std::vector<long long> group_reps(long long q);

LogUnitLattice build_lattice(long long q);

// ||b_j^v|| without the dual matrix, via the conductor-weighted even moment:
//   ||b_j^v||^2 = (8 / phi(q)) sum_{even nonprincipal chi} 1/(f_chi |L(1,chi)|^2).
double dual_norm_character(long long q, int threads = 1);

// (2 sqrt(15) / pi) sqrt(k / phi(q)); reduces to 2 sqrt(15)/(pi sqrt(q)) at k=1.
double asymptotic_prediction(long long q);

// 2 C sqrt(k) log(q) / sqrt(q): the comparison bound parameterized by C > 0.
double cdpr_upper_bound(long long q, double C);

// Textual matrix format: header "q d" (d = phi(q)/2), then the (d-1) x d
// entries row-major, one row per line, 17 significant digits.
void save_matrix(const std::string& path, long long q, const Eigen::MatrixXd& m);
Eigen::MatrixXd load_matrix(const std::string& path, long long* q_out = nullptr);

// Rebuild a lattice from saved basis/dual files (dual recomputed when absent).
LogUnitLattice lattice_from_files(const std::string& basis_path,
                                  const std::string& dual_path = "");

}  // namespace cyclo
