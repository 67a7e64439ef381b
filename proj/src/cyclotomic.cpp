#include "heckespan/cyclotomic.hpp"

#include <cassert>
#include <cmath>
#include <map>

namespace heckespan::cyclo {

using arith::Int;

namespace {

// exact division of integer polynomials (ascending), remainder must vanish
std::vector<Int> poly_divexact(std::vector<Int> num,
                               const std::vector<Int>& den) {
    assert(!den.empty() && den.back() != 0);
    int dn = (int)num.size() - 1, dd = (int)den.size() - 1;
    std::vector<Int> q(dn - dd + 1, Int(0));
    for (int i = dn - dd; i >= 0; --i) {
        Int c = num[i + dd] / den[dd];
        q[i] = c;
        if (c != 0)
            for (int j = 0; j <= dd; ++j) num[i + j] -= c * den[j];
    }
    for (auto& c : num) assert(c == 0);
    return q;
}

}  // namespace

const std::vector<Int>& cyclotomic_poly(unsigned m) {
    static std::map<unsigned, std::vector<Int>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // x^m - 1 divided by all Phi_d, d | m, d < m
    std::vector<Int> num(m + 1, Int(0));
    num[0] = -1;
    num[m] = 1;
    for (uint64_t d : arith::divisors(m)) {
        if (d == m) continue;
        num = poly_divexact(std::move(num), cyclotomic_poly((unsigned)d));
    }
    return cache.emplace(m, std::move(num)).first->second;
}

Cyclotomic::Cyclotomic(unsigned m) : m_(m) {
    c_.assign(cyclotomic_poly(m).size() - 1, Rat(0));
}

Cyclotomic::Cyclotomic(unsigned m, const Rat& r) : Cyclotomic(m) {
    c_[0] = r;
}

Cyclotomic Cyclotomic::root_power(unsigned m, unsigned exp) {
    Cyclotomic z(m);
    exp %= m;
    unsigned deg = z.c_.size();
    if (exp < deg) {
        z.c_[exp] = 1;
        return z;
    }
    // reduce x^exp mod Phi_m by repeated shifting
    const auto& phi = cyclotomic_poly(m);
    std::vector<Rat> cur(deg, Rat(0));
    cur[deg - 1] = 1;  // x^{deg-1}
    for (unsigned e = deg - 1; e < exp; ++e) {
        // multiply by x
        Rat lead = cur[deg - 1];
        for (unsigned i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (lead != 0)
            for (unsigned i = 0; i < deg; ++i)
                cur[i] -= lead * Rat(phi[i]);
    }
    z.c_ = cur;
    return z;
}

Cyclotomic Cyclotomic::from_char_value(unsigned m,
                                       const chars::CharValue& v) {
    if (v.zero) return Cyclotomic(m);
    auto r = v.root;
    assert(m % r.order == 0);
    return root_power(m, r.exp * (m / r.order));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    assert(m_ == o.m_);
    Cyclotomic z(m_);
    for (std::size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] + o.c_[i];
    return z;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    assert(m_ == o.m_);
    Cyclotomic z(m_);
    for (std::size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] - o.c_[i];
    return z;
}

Cyclotomic Cyclotomic::operator*(const Rat& r) const {
    Cyclotomic z(m_);
    for (std::size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] * r;
    return z;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    assert(m_ == o.m_);
    unsigned deg = c_.size();
    std::vector<Rat> full(2 * deg - 1, Rat(0));
    for (unsigned i = 0; i < deg; ++i) {
        if (c_[i] == 0) continue;
        for (unsigned j = 0; j < deg; ++j) {
            if (o.c_[j] == 0) continue;
            full[i + j] += c_[i] * o.c_[j];
        }
    }
    const auto& phi = cyclotomic_poly(m_);
    for (unsigned j = 2 * deg - 2; j >= deg && j < full.size(); --j) {
        Rat lead = full[j];
        if (lead != 0) {
            full[j] = 0;
            for (unsigned i = 0; i < deg; ++i)
                full[j - deg + i] -= lead * Rat(phi[i]);
        }
        if (j == deg) break;
    }
    Cyclotomic z(m_);
    for (unsigned i = 0; i < deg; ++i) z.c_[i] = full[i];
    return z;
}

Cyclotomic Cyclotomic::conjugate() const {
    Cyclotomic z(m_);
    unsigned deg = c_.size();
    for (unsigned i = 0; i < deg; ++i) {
        if (c_[i] == 0) continue;
        Cyclotomic t = root_power(m_, (m_ - i) % m_);
        for (unsigned j = 0; j < deg; ++j) z.c_[j] += c_[i] * t.c_[j];
    }
    return z;
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Cyclotomic::to_rational() const {
    assert(is_rational());
    return c_[0];
}

std::complex<double> Cyclotomic::embed() const {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        double t = 2.0 * M_PI * (double)i / (double)m_;
        s += c_[i].get_d() * std::complex<double>{std::cos(t), std::sin(t)};
    }
    return s;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    return m_ == o.m_ && c_ == o.c_;
}

}  // namespace heckespan::cyclo
