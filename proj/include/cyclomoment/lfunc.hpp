#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cyclomoment/characters.hpp"

namespace cyclo {

enum class LMethod { digamma, series, induced };

struct LOneValue {
    std::complex<double> value{0.0, 0.0};
    double abs_err = 0.0;  // conservative analytic bound, not interval arithmetic
    LMethod method = LMethod::digamma;
};

// psi(x) for x > 0: upward recurrence into x >= 10, then the asymptotic
// series.  Absolute error below 1e-13 everywhere (well below 1e-15 in
// practice); rejects x <= 0.
double digamma(double x);
inline constexpr double kDigammaAbsErr = 1e-13;

// psi(a/q) for a = 1..q-1, shared by every character modulo q.
class PsiTable {
public:
    explicit PsiTable(long long q);
    long long modulus() const { return q_; }
    double at(long long a) const { return values_[a]; }
    const std::vector<double>& values() const { return values_; }
    double abs_sum() const { return abs_sum_; }

private:
    long long q_;
    std::vector<double> values_;  // index a; slots 0 unused
    double abs_sum_ = 0.0;
};

class PsiCache {
public:
    const PsiTable& get(long long q);

private:
    std::mutex mu_;
    std::map<long long, std::unique_ptr<PsiTable>> cache_;
};

// Production route:  L(1, chi) = -(1/q) sum_{a=1}^{q-1} chi(a) psi(a/q)
// for nonprincipal chi mod q (any parity).  Exact finite formula, O(q).
LOneValue l_one_digamma(const DirichletCharacter& chi);
LOneValue l_one_digamma(const DirichletCharacter& chi, const PsiTable& psi);

// Test-only independent route: partial sum of chi(n)/n to N plus the Abel
// tail correction (A - S(N))/(N+1), where S are the periodic character
// prefix sums and A their mean over one period.  The remaining tail is below
// 2 q max|S| / N^2.  Requires N >= q.
class SeriesTable {
public:
    SeriesTable(long long q, long long N);
    long long modulus() const { return q_; }
    long long truncation() const { return n_; }
    LOneValue eval(const DirichletCharacter& chi) const;

private:
    long long q_;
    long long n_;
    std::vector<double> class_sums_;  // H_r = sum_{n<=N, n=r (q)} 1/n
    double h_total_ = 0.0;
};

LOneValue l_one_series_oracle(const DirichletCharacter& chi, long long N);

// Induction route:  L(1, chi) = L(1, chi*) prod_{p|q} (1 - chi*(p)/p) with
// chi* the primitive part (chi*(p) = 0 for p | conductor, so the product is
// just the finite Euler correction).  method = induced when conductor < q.
LOneValue l_one(const DirichletCharacter& chi);
LOneValue l_one(const DirichletCharacter& chi, GroupCache& groups, PsiCache& psi_tables);

// Batch digamma kernel: L(1, chi) for every character of the group, indexed
// like all_characters.  Slot 0 (principal) is {0, inf}.  The direct method
// reuses one psi table across characters; the fft method evaluates all
// character sums at once as a multidimensional DFT of the psi table laid out
// along the unit-group generators.
enum class BatchMethod { automatic, direct, fft };
std::vector<LOneValue> l_one_all(const CharacterGroup& group,
                                 BatchMethod method = BatchMethod::automatic,
                                 int threads = 1);

}  // namespace cyclo
