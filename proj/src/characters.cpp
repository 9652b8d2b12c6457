#include "cyclomoment/characters.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cyclo {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> reduced_root(long long num, long long den) {
    // reduce num/den, then special-case the axis points so that chi(-1) and
    // quadratic character values come out as exact integers
    const long long g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (den == 1) return {1.0, 0.0};
    if (den == 2) return {-1.0, 0.0};
    if (den == 4) return num == 1 ? std::complex<double>{0.0, 1.0}
                                  : std::complex<double>{0.0, -1.0};
    const double angle = kTwoPi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

CharacterGroup::CharacterGroup(long long q) : q_(q) {
    if (q == 1) {
        phi_ = 1;
        lcm_ = 1;
        unit_.assign(1, 1);
        elements_.assign(1, 0);
        roots_.assign(1, {1.0, 0.0});
        divisors_.assign(1, 1);
        return;
    }
    const auto gens = unit_group_generators(q);
    phi_ = euler_phi(q);
    for (const auto& [g, ord] : gens) {
        gen_residues_.push_back(g);
        gen_orders_.push_back(ord);
        lcm_ = std::lcm(lcm_, ord);
    }
    for (long long ord : gen_orders_) weights_.push_back(lcm_ / ord);

    const int r = rank();
    unit_.assign(q, 0);
    dlog_.assign(static_cast<std::size_t>(q) * r, 0);
    elements_.reserve(phi_);

    // mixed-radix odometer over exponent tuples, last generator fastest;
    // digit k rolling over multiplies by g_k^{o_k} = 1, so the running
    // residue only ever accumulates single generator factors
    std::vector<std::uint32_t> x(r, 0);
    long long res = 1;
    for (long long count = 0;; ++count) {
        elements_.push_back(res);
        unit_[res] = 1;
        for (int i = 0; i < r; ++i)
            dlog_[static_cast<std::size_t>(res) * r + i] = x[i];
        if (count + 1 == phi_) break;
        int k = r - 1;
        for (;; --k) {
            res = mul_mod(res, gen_residues_[k], q);
            if (++x[k] < gen_orders_[k]) break;
            x[k] = 0;
        }
    }
    if (elements_.size() != static_cast<std::size_t>(phi_))
        throw std::logic_error("CharacterGroup: generator orders do not span the group");

    neg_one_.assign(dlog(q - 1), dlog(q - 1) + r);

    roots_.resize(lcm_);
    for (long long t = 0; t < lcm_; ++t) roots_[t] = reduced_root(t, lcm_);

    divisors_ = divisors(q);
}

GroupPtr CharacterGroup::make(long long q) {
    if (q < 3)
        throw std::invalid_argument("character_group: q must be >= 3, got " +
                                    std::to_string(q));
    // the dlog/root tables are dense in q; far beyond the 1e5-scale moduli
    // this library targets they stop fitting in memory
    if (q > 5000000)
        throw std::invalid_argument("character_group: q too large for dense tables (" +
                                    std::to_string(q) + ")");
    return GroupPtr(new CharacterGroup(q));
}

GroupPtr CharacterGroup::trivial() {
    static const GroupPtr instance(new CharacterGroup(1));
    return instance;
}

GroupPtr character_group(long long q) { return CharacterGroup::make(q); }

bool CharacterGroup::is_unit(long long n) const {
    long long m = n % q_;
    if (m < 0) m += q_;
    return unit_[m] != 0;
}

long long CharacterGroup::angle_numerator(const std::vector<std::uint32_t>& e,
                                          long long n) const {
    long long m = n % q_;
    if (m < 0) m += q_;
    const std::uint32_t* x = dlog(m);
    long long t = 0;
    for (int i = 0; i < rank(); ++i)
        t = (t + static_cast<long long>(e[i]) * weights_[i] % lcm_ * x[i]) % lcm_;
    return t;
}

std::vector<std::uint32_t> CharacterGroup::index_exponents(long long idx) const {
    std::vector<std::uint32_t> e(rank(), 0);
    for (int i = rank() - 1; i >= 0; --i) {
        e[i] = static_cast<std::uint32_t>(idx % gen_orders_[i]);
        idx /= gen_orders_[i];
    }
    return e;
}

long long CharacterGroup::exponent_index(const std::vector<std::uint32_t>& e) const {
    long long idx = 0;
    for (int i = 0; i < rank(); ++i) idx = idx * gen_orders_[i] + e[i];
    return idx;
}

long long CharacterGroup::conjugate_index(long long idx) const {
    auto e = index_exponents(idx);
    for (int i = 0; i < rank(); ++i)
        e[i] = e[i] == 0 ? 0 : static_cast<std::uint32_t>(gen_orders_[i] - e[i]);
    return exponent_index(e);
}

bool CharacterGroup::is_even(const std::vector<std::uint32_t>& e) const {
    if (q_ == 1) return true;
    long long t = 0;
    for (int i = 0; i < rank(); ++i)
        t = (t + static_cast<long long>(e[i]) * weights_[i] % lcm_ * neg_one_[i]) % lcm_;
    return t == 0;
}

long long CharacterGroup::conductor_of(const std::vector<std::uint32_t>& e) const {
    if (q_ == 1) return 1;
    // smallest f | q with chi = 1 on all units congruent to 1 mod f
    for (long long f : divisors_) {
        bool trivial_on_kernel = true;
        for (long long n = 1 + f; n < q_; n += f) {
            if (!unit_[n]) continue;
            if (angle_numerator(e, n) != 0) {
                trivial_on_kernel = false;
                break;
            }
        }
        if (trivial_on_kernel) return f;
    }
    return q_;
}

DirichletCharacter::DirichletCharacter(GroupPtr group, std::vector<std::uint32_t> exponents)
    : group_(std::move(group)), exp_(std::move(exponents)) {
    if (static_cast<int>(exp_.size()) != group_->rank())
        throw std::invalid_argument("DirichletCharacter: exponent vector has wrong rank");
    for (int i = 0; i < group_->rank(); ++i)
        exp_[i] = static_cast<std::uint32_t>(exp_[i] % group_->generator_orders()[i]);
    conductor_ = group_->conductor_of(exp_);
    even_ = group_->is_even(exp_);
}

long long DirichletCharacter::modulus() const { return group_->modulus(); }

bool DirichletCharacter::is_principal() const {
    for (auto e : exp_)
        if (e != 0) return false;
    return true;
}

std::complex<double> DirichletCharacter::evaluate(long long n) const {
    if (group_->modulus() == 1) return {1.0, 0.0};
    if (!group_->is_unit(n)) return {0.0, 0.0};
    return group_->root_of_unity(group_->angle_numerator(exp_, n));
}

DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<std::uint32_t> e(exp_);
    for (int i = 0; i < group_->rank(); ++i)
        e[i] = e[i] == 0 ? 0
                         : static_cast<std::uint32_t>(group_->generator_orders()[i] - e[i]);
    return DirichletCharacter(group_, std::move(e));
}

DirichletCharacter DirichletCharacter::primitive_part() const {
    GroupCache local;
    return primitive_part(local);
}

DirichletCharacter DirichletCharacter::primitive_part(GroupCache& groups) const {
    const long long f = conductor_;
    if (f == 1) return DirichletCharacter(CharacterGroup::trivial(), {});
    if (f == group_->modulus()) return *this;

    const GroupPtr gf = groups.get(f);
    const long long L = group_->angle_denominator();
    std::vector<std::uint32_t> e(gf->rank(), 0);
    for (int i = 0; i < gf->rank(); ++i) {
        // lift the small-modulus generator to a unit mod q, evaluate there
        long long a = gf->generator_residues()[i];
        while (!group_->is_unit(a)) a += f;
        const long long t = group_->angle_numerator(exp_, a);
        const long long ord = gf->generator_orders()[i];
        // chi(a) is an ord-th root of unity because a^ord = 1 (mod f)
        if ((static_cast<__int128>(t) * ord) % L != 0)
            throw std::logic_error("primitive_part: value is not an ord-th root of unity");
        e[i] = static_cast<std::uint32_t>((static_cast<__int128>(t) * ord / L) % ord);
    }
    return DirichletCharacter(gf, std::move(e));
}

std::vector<DirichletCharacter> all_characters(const GroupPtr& group) {
    std::vector<DirichletCharacter> out;
    out.reserve(group->character_count());
    for (long long idx = 0; idx < group->character_count(); ++idx)
        out.emplace_back(group, group->index_exponents(idx));
    return out;
}

GroupPtr GroupCache::get(long long q) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(q);
    if (it != cache_.end()) return it->second;
    GroupPtr g = q == 1 ? CharacterGroup::trivial() : CharacterGroup::make(q);
    cache_.emplace(q, g);
    return g;
}

double orthogonality_lhs(long long q, int weight_bit, int parity_bit, long long n1,
                         long long n2) {
    return orthogonality_lhs(all_characters(character_group(q)), weight_bit, parity_bit,
                             n1, n2);
}

double orthogonality_lhs(const std::vector<DirichletCharacter>& chars, int weight_bit,
                         int parity_bit, long long n1, long long n2) {
    std::complex<double> acc{0.0, 0.0};
    const bool want_even = parity_bit == 0;
    for (const auto& chi : chars) {
        if (chi.is_principal() || chi.is_even() != want_even) continue;
        const std::complex<double> term = chi.evaluate(n1) * std::conj(chi.evaluate(n2));
        acc += weight_bit ? term / static_cast<double>(chi.conductor()) : term;
    }
    // the summand set is closed under conjugation, so the imaginary parts
    // cancel up to rounding
    return acc.real();
}

double orthogonality_rhs(long long q, int weight_bit, int parity_bit, long long n1,
                         long long n2) {
    if (gcd_ll(n1, q) != 1 || gcd_ll(n2, q) != 1)
        throw std::invalid_argument(
            "orthogonality_rhs: needs gcd(n1 n2, q) = 1 (the divisor-sum form is "
            "not asserted otherwise)");
    const long long diff = n1 - n2;
    const long long summ = n1 + n2;
    const long long sign = parity_bit == 0 ? 1 : -1;
    double total = 0.0;
    for (long long d : divisors(q)) {
        if (d == 1) continue;
        long long inner = 0;
        for (long long l : divisors(d)) {
            const long long w = euler_phi(l) * moebius(d / l);
            if (diff % l == 0) inner += w;
            if (summ % l == 0) inner += sign * w;
        }
        total += static_cast<double>(inner) / (weight_bit ? static_cast<double>(d) : 1.0);
    }
    return 0.5 * total;
}

}  // namespace cyclo
