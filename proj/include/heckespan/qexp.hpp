#pragma once

#include <cstdint>
#include <vector>

#include "heckespan/arith.hpp"

namespace heckespan::modforms {

using arith::Int;
using arith::Rat;

// Exact q-expansion a_0 + a_1 q + ... + a_prec q^prec of a modular form.
struct QExpansion {
    unsigned weight = 0;
    uint64_t level = 1;
    unsigned prec = 0;
    std::vector<Rat> a;  // size prec+1

    QExpansion() = default;
    QExpansion(unsigned k, uint64_t N, unsigned p)
        : weight(k), level(N), prec(p), a(p + 1, Rat(0)) {}

    const Rat& coeff(unsigned n) const { return a.at(n); }
};

// (alpha_m f)(z) = f(mz): a_n -> a_{n/m} when m | n, else 0.
QExpansion degeneracy_lift(const QExpansion& f, uint64_t m, unsigned prec);

QExpansion qexp_add(const QExpansion& f, const QExpansion& g);
QExpansion qexp_scale(const QExpansion& f, const Rat& c);
QExpansion qexp_mul(const QExpansion& f, const QExpansion& g, unsigned prec);

}  // namespace heckespan::modforms
