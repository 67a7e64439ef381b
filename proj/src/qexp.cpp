#include "heckespan/qexp.hpp"

#include <cassert>

namespace heckespan::modforms {

QExpansion degeneracy_lift(const QExpansion& f, uint64_t m, unsigned prec) {
    QExpansion g(f.weight, f.level * m, prec);
    for (unsigned n = 0; n <= prec; ++n) {
        if (n % m == 0 && n / m <= f.prec) g.a[n] = f.a[n / m];
    }
    // a_0 maps to a_0
    if (f.prec >= 0) g.a[0] = f.a[0];
    return g;
}

QExpansion qexp_add(const QExpansion& f, const QExpansion& g) {
    assert(f.weight == g.weight);
    unsigned prec = std::min(f.prec, g.prec);
    QExpansion h(f.weight, std::lcm(f.level, g.level), prec);
    for (unsigned n = 0; n <= prec; ++n) h.a[n] = f.a[n] + g.a[n];
    return h;
}

QExpansion qexp_scale(const QExpansion& f, const Rat& c) {
    QExpansion h = f;
    for (auto& x : h.a) x *= c;
    return h;
}

QExpansion qexp_mul(const QExpansion& f, const QExpansion& g, unsigned prec) {
    QExpansion h(f.weight + g.weight, std::lcm(f.level, g.level), prec);
    for (unsigned i = 0; i <= std::min(prec, f.prec); ++i) {
        if (f.a[i] == 0) continue;
        for (unsigned j = 0; i + j <= prec && j <= g.prec; ++j) {
            if (g.a[j] == 0) continue;
            h.a[i + j] += f.a[i] * g.a[j];
        }
    }
    return h;
}

}  // namespace heckespan::modforms
