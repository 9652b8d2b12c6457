#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cyclomoment/arith.hpp"

namespace cyclo {

class CharacterGroup;
using GroupPtr = std::shared_ptr<const CharacterGroup>;

// Structure of (Z/q)* used to enumerate and evaluate Dirichlet characters:
// fixed generators g_1..g_r of orders o_1..o_r with product phi(q), a discrete
// log table residue -> exponent vector, and a primitive-root-of-unity table.
//
// A character is an exponent vector (e_1..e_r) with
//   chi(n) = exp(2 pi i * sum_i e_i * dlog_i(n) / o_i),
// which we keep as the exact integer numerator t = sum_i e_i w_i dlog_i(n)
// modulo L, where L = lcm(o_i) and w_i = L / o_i.  Character identities
// (parity, conductor tests, orthogonality congruences) are decided on these
// integers; a complex value is produced only at the final exp.
class CharacterGroup {
public:
    static GroupPtr make(long long q);  // q >= 3
    static GroupPtr trivial();          // modulus 1 (conductor of the principal character)

    long long modulus() const { return q_; }
    long long phi() const { return phi_; }
    int rank() const { return static_cast<int>(gen_residues_.size()); }
    const std::vector<long long>& generator_residues() const { return gen_residues_; }
    const std::vector<long long>& generator_orders() const { return gen_orders_; }

    // L and the per-generator weights L / o_i.
    long long angle_denominator() const { return lcm_; }
    const std::vector<long long>& angle_weights() const { return weights_; }

    bool is_unit(long long n) const;

    // Exponent vector of a residue coprime to q (undefined otherwise).
    const std::uint32_t* dlog(long long residue) const {
        return dlog_.data() + static_cast<std::size_t>(residue) * rank();
    }
    const std::vector<std::uint32_t>& neg_one_exponents() const { return neg_one_; }

    // exp(2 pi i t / L); t = 0, L/2, L/4, 3L/4 produce exact 1, -1, i, -i.
    std::complex<double> root_of_unity(long long t) const { return roots_[t]; }

    // chi_e(n) angle numerator for a unit n; reduces n mod q first.
    long long angle_numerator(const std::vector<std::uint32_t>& e, long long n) const;

    // Residues visited by the mixed-radix odometer over exponent tuples
    // (last generator fastest), starting at 1.  Position x holds the residue
    // with dlog equal to the digits of x.
    const std::vector<long long>& element_order() const { return elements_; }

    // Character indexing: mixed-radix with the last generator fastest, so the
    // principal character has index 0.
    long long character_count() const { return phi_; }
    std::vector<std::uint32_t> index_exponents(long long idx) const;
    long long exponent_index(const std::vector<std::uint32_t>& e) const;
    long long conjugate_index(long long idx) const;

    // Smallest f | q with chi_e trivial on every unit n = 1 (mod f).
    long long conductor_of(const std::vector<std::uint32_t>& e) const;
    bool is_even(const std::vector<std::uint32_t>& e) const;

private:
    explicit CharacterGroup(long long q);

    long long q_ = 1;
    long long phi_ = 1;
    long long lcm_ = 1;
    std::vector<long long> gen_residues_;
    std::vector<long long> gen_orders_;
    std::vector<long long> weights_;
    std::vector<std::uint8_t> unit_;      // size q
    std::vector<std::uint32_t> dlog_;     // size q * rank
    std::vector<std::uint32_t> neg_one_;  // dlog of q - 1
    std::vector<long long> elements_;     // size phi
    std::vector<std::complex<double>> roots_;  // size L
    std::vector<long long> divisors_;     // divisors of q, ascending
};

GroupPtr character_group(long long q);

class DirichletCharacter {
public:
    DirichletCharacter(GroupPtr group, std::vector<std::uint32_t> exponents);

    const GroupPtr& group() const { return group_; }
    long long modulus() const;
    const std::vector<std::uint32_t>& exponents() const { return exp_; }
    bool is_principal() const;
    bool is_even() const { return even_; }
    long long conductor() const { return conductor_; }

    std::complex<double> evaluate(long long n) const;
    std::complex<double> operator()(long long n) const { return evaluate(n); }

    DirichletCharacter conjugate() const;

    // The primitive character modulo conductor() inducing this one; the
    // principal character maps to the trivial character of modulus 1.
    DirichletCharacter primitive_part() const;
    DirichletCharacter primitive_part(class GroupCache& groups) const;

private:
    GroupPtr group_;
    std::vector<std::uint32_t> exp_;
    long long conductor_ = 1;
    bool even_ = true;
};

// All phi(q) characters in group index order (principal first).
std::vector<DirichletCharacter> all_characters(const GroupPtr& group);

// Shared immutable groups keyed by modulus (thread-safe).
class GroupCache {
public:
    GroupPtr get(long long q);

private:
    std::mutex mu_;
    std::map<long long, GroupPtr> cache_;
};

// Two routes to the conductor-weighted character orthogonality sum
//   sum over nonprincipal chi mod q with chi(-1) = (-1)^parity_bit of
//   chi(n1) conj(chi(n2)) / f_chi^weight_bit.
// The direct route enumerates characters; the divisor-sum route uses
// Moebius-inverted counts of primitive characters.  The direct route returns
// 0 whenever gcd(n1 n2, q) > 1; the divisor-sum route requires coprimality.
double orthogonality_lhs(long long q, int weight_bit, int parity_bit, long long n1,
                         long long n2);
double orthogonality_lhs(const std::vector<DirichletCharacter>& chars, int weight_bit,
                         int parity_bit, long long n1, long long n2);
double orthogonality_rhs(long long q, int weight_bit, int parity_bit, long long n1,
                         long long n2);

}  // namespace cyclo
