#include "heckespan/modforms.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "heckespan/errors.hpp"
#include "heckespan/newforms.hpp"

namespace heckespan::modforms {

using arith::Int;
using cyclo::Cyclotomic;

// --------------------------------------------------------------------
// Bernoulli
// --------------------------------------------------------------------

const Rat& bernoulli_number(unsigned k) {
    static std::vector<Rat> cache{Rat(1), Rat(-1, 2)};
    while (cache.size() <= k) {
        unsigned n = cache.size();
        // sum_{j=0}^{n} C(n+1,j) B_j = 0  (n >= 1)
        Rat s(0);
        for (unsigned j = 0; j < n; ++j)
            s += Rat(arith::binomial(n + 1, j)) * cache[j];
        cache.push_back(-s / Rat(n + 1));
    }
    return cache[k];
}

namespace {

// Bernoulli polynomial value B_k(x), exact
Rat bernoulli_poly(unsigned k, const Rat& x) {
    Rat acc(0), xp(1);
    // B_k(x) = sum_j C(k,j) B_{k-j} x^j
    for (unsigned j = 0; j <= k; ++j) {
        acc += Rat(arith::binomial(k, j)) * bernoulli_number(k - j) * xp;
        xp *= x;
    }
    return acc;
}

}  // namespace

Cyclotomic generalized_bernoulli_cyc(const DirichletCharacter& phi,
                                     unsigned k) {
    struct Key {
        uint64_t q; unsigned k;
        std::vector<unsigned> sig;
        bool operator<(const Key& o) const {
            return std::tie(q, k, sig) < std::tie(o.q, o.k, o.sig);
        }
    };
    static std::map<Key, Cyclotomic> memo;
    uint64_t f = phi.modulus();
    Key key{f, k, {}};
    for (uint64_t a = 0; a < f; ++a) {
        auto e = phi.value_exponent(a);
        key.sig.push_back(e ? *e + 1 : 0);
    }
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    unsigned m = phi.order();
    Cyclotomic acc(m);
    Rat fk = f == 1 ? Rat(1) : Rat(arith::ipow(f, k - 1));
    for (uint64_t a = 1; a <= f; ++a) {
        auto v = phi.value(a);
        if (v.zero) continue;
        Rat b = bernoulli_poly(k, Rat(Int(a), Int(f))) * fk;
        acc += Cyclotomic::from_char_value(m, v) * b;
    }
    memo.emplace(key, acc);
    return acc;
}

Rat generalized_bernoulli(const DirichletCharacter& phi, unsigned k) {
    auto c = generalized_bernoulli_cyc(phi, k);
    if (!c.is_rational())
        throw usage_error("generalized_bernoulli: character is not real");
    return c.to_rational();
}

// --------------------------------------------------------------------
// Eisenstein
// --------------------------------------------------------------------

Cyclotomic eisenstein_sigma_cyc(const DirichletCharacter& psi,
                                const DirichletCharacter& phi, unsigned k,
                                uint64_t n) {
    unsigned m = std::lcm(psi.order(), phi.order());
    Cyclotomic acc(m);
    for (uint64_t b : arith::divisors(n)) {
        uint64_t a = n / b;
        auto va = psi.value(a);
        auto vb = phi.value(b);
        if (va.zero || vb.zero) continue;
        auto prod = Cyclotomic::from_char_value(m, va) *
                    Cyclotomic::from_char_value(m, vb);
        acc += prod * Rat(arith::ipow(b, k - 1));
    }
    return acc;
}

Rat eisenstein_sigma(const DirichletCharacter& psi,
                     const DirichletCharacter& phi, unsigned k, uint64_t n) {
    auto c = eisenstein_sigma_cyc(psi, phi, k, n);
    if (!c.is_rational())
        throw usage_error("eisenstein_sigma: nonreal character values");
    return c.to_rational();
}

QExpansion eisenstein_newform(const EisensteinParams& params, unsigned prec) {
    unsigned k = params.k;
    if (k < 4 || k % 2 != 0)
        throw usage_error("eisenstein_newform: unsupported weight " +
                          std::to_string(k));
    uint64_t level = params.psi.modulus() * params.phi.modulus();
    QExpansion f(k, level, prec);
    if (params.psi.modulus() == 1) {
        // L(phi, 1-k)/2 = -B_{k,phi}/(2k)
        f.a[0] = -generalized_bernoulli(params.phi, k) / Rat(2 * k);
    }
    for (unsigned n = 1; n <= prec; ++n)
        f.a[n] = eisenstein_sigma(params.psi, params.phi, k, n);
    return f;
}

// --------------------------------------------------------------------
// Miller basis
// --------------------------------------------------------------------

namespace {

QExpansion eis_series_normalized(unsigned k, unsigned prec) {
    // 1 - (2k/B_k) sum sigma_{k-1}(n) q^n : integral for k = 4, 6
    QExpansion f(k, 1, prec);
    f.a[0] = 1;
    Rat c = Rat(-2 * (int)k) / bernoulli_number(k);
    std::vector<Rat> sig(prec + 1, Rat(0));
    for (uint64_t d = 1; d <= prec; ++d) {
        Rat dp(arith::ipow(d, k - 1));
        for (uint64_t mult = d; mult <= prec; mult += d) sig[mult] += dp;
    }
    for (unsigned n = 1; n <= prec; ++n) f.a[n] = c * sig[n];
    return f;
}

}  // namespace

std::vector<QExpansion> miller_basis(unsigned k, unsigned prec) {
    if (k < 4 || k % 2 != 0)
        throw usage_error("miller_basis: unsupported weight");
    int d = dim_modular(k, 1);
    if ((int)prec < d - 1)
        throw usage_error("miller_basis: prec " + std::to_string(prec) +
                          " below dim-1 = " + std::to_string(d - 1));
    QExpansion e4 = eis_series_normalized(4, prec);
    QExpansion e6 = eis_series_normalized(6, prec);
    // all monomials E4^a E6^b of weight k
    std::vector<QExpansion> rows;
    for (unsigned b = 0; 6 * b <= k; ++b) {
        if ((k - 6 * b) % 4 != 0) continue;
        unsigned a = (k - 6 * b) / 4;
        QExpansion m(0, 1, prec);
        m.a[0] = 1;
        m.weight = 0;
        for (unsigned i = 0; i < a; ++i) m = qexp_mul(m, e4, prec);
        for (unsigned i = 0; i < b; ++i) m = qexp_mul(m, e6, prec);
        m.weight = k;
        rows.push_back(std::move(m));
    }
    assert((int)rows.size() == d);
    // reduced row echelon over the coefficient columns
    std::vector<std::vector<Rat>> mat;
    for (auto& r : rows) mat.push_back(r.a);
    std::size_t nrows = mat.size(), ncols = prec + 1, rr = 0;
    for (std::size_t c = 0; c < ncols && rr < nrows; ++c) {
        std::size_t sel = rr;
        while (sel < nrows && mat[sel][c] == 0) ++sel;
        if (sel == nrows) continue;
        std::swap(mat[rr], mat[sel]);
        Rat inv = Rat(1) / mat[rr][c];
        for (auto& x : mat[rr]) x *= inv;
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i != rr && mat[i][c] != 0) {
                Rat f0 = mat[i][c];
                for (std::size_t j = c; j < ncols; ++j)
                    mat[i][j] -= f0 * mat[rr][j];
            }
        }
        ++rr;
    }
    assert((int)rr == d);
    std::vector<QExpansion> out;
    for (int i = 0; i < d; ++i) {
        QExpansion f(k, 1, prec);
        f.a = mat[i];
        out.push_back(std::move(f));
    }
    return out;
}

// --------------------------------------------------------------------
// dimensions
// --------------------------------------------------------------------

namespace {

void require_space(unsigned k, uint64_t N) {
    if (!arith::is_squarefree(N))
        throw usage_error("level must be squarefree: " + std::to_string(N));
    if (k < 4 || k % 2 != 0)
        throw usage_error("weight must be even and >= 4: " +
                          std::to_string(k));
}

}  // namespace

uint64_t gamma0_index(uint64_t N) {
    uint64_t m = N;
    for (auto [p, e] : arith::factorize(N)) m = m / p * (p + 1);
    return m;
}

unsigned elliptic_nu2(uint64_t N) {
    unsigned v = 1;
    for (auto [p, e] : arith::factorize(N)) {
        if (p == 2) continue;
        if (p % 4 == 1) v *= 2;
        else return 0;
    }
    return v;
}

unsigned elliptic_nu3(uint64_t N) {
    unsigned v = 1;
    for (auto [p, e] : arith::factorize(N)) {
        if (p == 3) continue;
        if (p % 3 == 1) v *= 2;
        else return 0;
    }
    return v;
}

unsigned cusp_count(uint64_t N) {
    // sum over d | N of phi(gcd(d, N/d)); = tau(N) for squarefree N
    unsigned c = 0;
    for (uint64_t d : arith::divisors(N)) {
        uint64_t g = std::gcd(d, N / d);
        unsigned phi = 1;
        for (auto [p, e] : arith::factorize(g)) {
            uint64_t pe = 1;
            for (unsigned i = 1; i < e; ++i) pe *= p;
            phi *= (unsigned)(pe * (p - 1));
        }
        c += phi;
    }
    return c;
}

unsigned gamma0_genus(uint64_t N) {
    // 1 + m/12 - nu2/4 - nu3/3 - c/2
    long num = 12 + (long)gamma0_index(N) - 3 * (long)elliptic_nu2(N) -
               4 * (long)elliptic_nu3(N) - 6 * (long)cusp_count(N);
    assert(num % 12 == 0);
    return (unsigned)(num / 12);
}

int dim_modular(unsigned k, uint64_t N) {
    require_space(k, N);
    int g = (int)gamma0_genus(N);
    return (int)(k - 1) * (g - 1) + (int)(k / 4) * (int)elliptic_nu2(N) +
           (int)(k / 3) * (int)elliptic_nu3(N) +
           (int)(k / 2) * (int)cusp_count(N);
}

int dim_cusp(unsigned k, uint64_t N) {
    return dim_modular(k, N) - (int)cusp_count(N);
}

int dim_eis(unsigned k, uint64_t N) {
    require_space(k, N);
    return (int)cusp_count(N);
}

int dim_cusp_new(unsigned k, uint64_t N) {
    require_space(k, N);
    int total = dim_cusp(k, N);
    for (uint64_t d : arith::divisors(N)) {
        if (d == N) continue;
        total -= (int)arith::divisors(N / d).size() * dim_cusp_new(k, d);
    }
    return total;
}

int dim_eis_new(unsigned k, uint64_t N) {
    require_space(k, N);
    int total = dim_eis(k, N);
    for (uint64_t d : arith::divisors(N)) {
        if (d == N) continue;
        total -= (int)arith::divisors(N / d).size() * dim_eis_new(k, d);
    }
    return total;
}

// --------------------------------------------------------------------
// full space basis
// --------------------------------------------------------------------

std::vector<QExpansion> full_space_basis(unsigned k, uint64_t N,
                                         unsigned prec,
                                         const nf::CuspSource& cusp_source) {
    require_space(k, N);
    std::vector<QExpansion> out;
    // Eisenstein part: for squarefree N with trivial nebentypus the only
    // newform pair is psi = phi = 1_1, so the lifts of level-one E_k.
    DirichletCharacter one(1);
    QExpansion ek = eisenstein_newform({one, one, k}, prec);
    for (uint64_t d : arith::divisors(N))
        out.push_back(degeneracy_lift(ek, d, prec));
    // cusp part from newform orbits at each divisor
    for (uint64_t d : arith::divisors(N)) {
        int want = dim_cusp_new(k, d);
        if (want == 0) continue;
        auto orbits = cusp_source.orbits(d, k);
        int got = 0;
        for (const auto& orb : orbits) got += (int)orb.dim();
        if (got != want)
            throw data_unavailable(
                "cusp data for level " + std::to_string(d) + " weight " +
                    std::to_string(k) + ": have dimension " +
                    std::to_string(got) + ", expected " +
                    std::to_string(want),
                (int)d, (int)k);
        for (const auto& orb : orbits) {
            for (auto& tf : orb.trace_forms(prec)) {
                QExpansion f(k, d, prec);
                f.a = std::move(tf);
                for (uint64_t e : arith::divisors(N / d))
                    out.push_back(degeneracy_lift(f, e, prec));
            }
        }
    }
    return out;
}

}  // namespace heckespan::modforms
