#include "heckespan/dirichlet.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace heckespan::chars {

namespace {

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t m) {
    unsigned __int128 r = 1, bb = b % m;
    while (e) {
        if (e & 1) r = r * bb % m;
        bb = bb * bb % m;
        e >>= 1;
    }
    return (uint64_t)r;
}

uint64_t primitive_root_mod_pe(uint64_t p, unsigned e) {
    // primitive root mod p, lifted to p^e
    uint64_t phi = p - 1;
    auto fac = arith::factorize(phi);
    uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto [q, _] : fac)
            if (pow_mod(g, phi / q, p) == 1) { ok = false; break; }
        if (ok) break;
    }
    if (e == 1) return g;
    uint64_t p2 = p * p;
    if (pow_mod(g, p - 1, p2) == 1) g += p;
    return g;
}

}  // namespace

struct Factor {
    uint64_t pe;
    unsigned m;                   // cyclic order of this generator
    std::vector<unsigned> dlog;   // residue mod pe -> exponent (coprime only)
};

namespace {

std::vector<Factor> group_factors(uint64_t q) {
    std::vector<Factor> out;
    for (auto [p, e] : arith::factorize(q)) {
        uint64_t pe = 1;
        for (unsigned i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue;  // trivial group
            if (e == 2) {
                Factor f{pe, 2, std::vector<unsigned>(pe, 0)};
                f.dlog[3] = 1;
                f.dlog[1] = 0;
                out.push_back(std::move(f));
                continue;
            }
            // 2^e, e >= 3: <-1> x <5>
            unsigned m5 = pe / 4;
            Factor fm{pe, 2, std::vector<unsigned>(pe, 0)};
            Factor f5{pe, m5, std::vector<unsigned>(pe, 0)};
            uint64_t v = 1;
            for (unsigned t = 0; t < m5; ++t) {
                fm.dlog[v] = 0;
                f5.dlog[v] = t;
                uint64_t w = pe - v;  // -5^t
                fm.dlog[w] = 1;
                f5.dlog[w] = t;
                v = v * 5 % pe;
            }
            out.push_back(std::move(fm));
            out.push_back(std::move(f5));
            continue;
        }
        unsigned m = (unsigned)(pe / p * (p - 1));
        Factor f{pe, m, std::vector<unsigned>(pe, 0)};
        uint64_t g = primitive_root_mod_pe(p, e);
        uint64_t v = 1;
        for (unsigned t = 0; t < m; ++t) {
            f.dlog[v] = t;
            v = v * g % pe;
        }
        out.push_back(std::move(f));
    }
    return out;
}

// shared factor tables; characters of the same modulus reuse them
std::vector<Factor> const& factors_for(uint64_t q) {
    static std::vector<std::pair<uint64_t, std::vector<Factor>>> cache;
    for (auto& [qq, f] : cache)
        if (qq == q) return f;
    cache.emplace_back(q, group_factors(q));
    return cache.back().second;
}

}  // namespace

struct CharImpl {
    const std::vector<Factor>* factors;
};

DirichletCharacter::DirichletCharacter(uint64_t q)
    : DirichletCharacter(q, {}) {}

DirichletCharacter::DirichletCharacter(uint64_t q,
                                       std::vector<unsigned> exponents)
    : q_(q), exps_(std::move(exponents)) {
    init_group();
    if (exps_.empty()) exps_.assign(gens_.size(), 0);
    assert(exps_.size() == gens_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i)
        exps_[i] %= gens_[i].second;
    compute_order_and_conductor();
}

void DirichletCharacter::init_group() {
    const auto& fs = factors_for(q_);
    gens_.clear();
    dlog_.clear();
    for (const auto& f : fs) {
        gens_.emplace_back(f.pe, f.m);
        dlog_.push_back(f.dlog);
    }
}

void DirichletCharacter::compute_order_and_conductor() {
    unsigned r = 1;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        unsigned m = gens_[i].second;
        unsigned c = exps_[i];
        unsigned d = c ? m / std::gcd(m, c) : 1;
        r = std::lcm(r, d);
    }
    order_ = r;
    conductor_ = q_;
    for (uint64_t f : arith::divisors(q_)) {
        bool trivial_on_kernel = true;
        for (uint64_t a = 1; a <= q_ && trivial_on_kernel; ++a) {
            if (std::gcd(a, q_) != 1) continue;
            if (a % f != 1 % std::max<uint64_t>(f, 1)) continue;
            auto e = value_exponent(a);
            if (e && *e != 0) trivial_on_kernel = false;
        }
        if (trivial_on_kernel) { conductor_ = f; break; }
    }
}

std::optional<unsigned> DirichletCharacter::value_exponent(uint64_t a) const {
    a %= q_;
    if (q_ == 1) return 0;
    if (std::gcd(a, q_) != 1) return std::nullopt;
    // sum of c_i * dlog_i(a) / m_i  (mod 1), expressed against order_
    uint64_t L = 1;
    for (auto& [pe, m] : gens_) L = std::lcm(L, (uint64_t)m);
    uint64_t E = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        uint64_t pe = gens_[i].first;
        unsigned m = gens_[i].second;
        unsigned d = dlog_[i][a % pe];
        E = (E + (uint64_t)exps_[i] * d % L * (L / m)) % L;
    }
    uint64_t num = E * order_;
    assert(num % L == 0);
    return (unsigned)(num / L % order_);
}

CharValue DirichletCharacter::value(uint64_t a) const {
    auto e = value_exponent(a);
    if (!e) return CharValue::make_zero();
    return CharValue::make_root({order_, *e});
}

int DirichletCharacter::real_value(uint64_t a) const {
    auto e = value_exponent(a);
    if (!e) return 0;
    assert(is_real());
    return *e == 0 ? 1 : -1;
}

bool DirichletCharacter::is_even() const {
    if (q_ <= 2) return true;
    auto e = value_exponent(q_ - 1);
    return e && *e == 0;
}

DirichletCharacter DirichletCharacter::product(
    const DirichletCharacter& other) const {
    assert(q_ == other.q_);
    std::vector<unsigned> ex(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i)
        ex[i] = (exps_[i] + other.exps_[i]) % gens_[i].second;
    return DirichletCharacter(q_, std::move(ex));
}

DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<unsigned> ex(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i)
        ex[i] = (gens_[i].second - exps_[i]) % gens_[i].second;
    return DirichletCharacter(q_, std::move(ex));
}

std::vector<DirichletCharacter> characters_mod(uint64_t q) {
    const auto& fs = factors_for(q);
    std::vector<unsigned> radix;
    for (const auto& f : fs) radix.push_back(f.m);
    std::vector<DirichletCharacter> out;
    std::vector<unsigned> cur(radix.size(), 0);
    while (true) {
        out.emplace_back(q, cur);
        std::size_t i = 0;
        for (; i < radix.size(); ++i) {
            if (++cur[i] < radix[i]) break;
            cur[i] = 0;
        }
        if (i == radix.size()) break;
        if (radix.empty()) break;
    }
    return out;
}

}  // namespace heckespan::chars
