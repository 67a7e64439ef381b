#include "heckespan/spanrank.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "heckespan/errors.hpp"

namespace heckespan::spanrank {

CoeffMatrix coeff_matrix(const std::vector<QExpansion>& basis,
                         const std::vector<uint64_t>& indices) {
    if (basis.empty()) throw usage_error("coeff_matrix: empty basis");
    unsigned k = basis[0].weight;
    for (const auto& f : basis)
        if (f.weight != k)
            throw usage_error("coeff_matrix: mixed weights");
    CoeffMatrix m;
    m.row_indices = indices;
    for (uint64_t n : indices) {
        std::vector<Rat> row;
        for (const auto& f : basis) {
            if (n > f.prec)
                throw usage_error("coeff_matrix: index " + std::to_string(n) +
                                  " exceeds precision " +
                                  std::to_string(f.prec));
            row.push_back(f.a[n]);
        }
        m.entries.push_back(std::move(row));
    }
    return m;
}

namespace {

// clear denominators row-wise, returning integer rows (rank-preserving)
std::vector<std::vector<Int>> integralize(
    const std::vector<std::vector<Rat>>& rows) {
    std::vector<std::vector<Int>> out;
    for (const auto& row : rows) {
        Int den = 1;
        for (const auto& x : row)
            den = lcm(den, Int(x.get_den()));
        std::vector<Int> r;
        for (const auto& x : row) {
            Rat v = x * Rat(den);
            assert(v.get_den() == 1);
            r.push_back(v.get_num());
        }
        out.push_back(std::move(r));
    }
    return out;
}

// fraction-free Bareiss; returns rank
int bareiss_rank(std::vector<std::vector<Int>> a) {
    std::size_t nr = a.size();
    if (nr == 0) return 0;
    std::size_t nc = a[0].size();
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t piv = r;
        while (piv < nr && a[piv][c] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(a[r], a[piv]);
        for (std::size_t i = r + 1; i < nr; ++i) {
            for (std::size_t j = c + 1; j < nc; ++j) {
                Int t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                assert(t % prev == 0);
                a[i][j] = t / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return (int)r;
}

}  // namespace

int exact_rank_rows(const std::vector<std::vector<Rat>>& rows) {
    return bareiss_rank(integralize(rows));
}

int exact_rank(const CoeffMatrix& m) { return exact_rank_rows(m.entries); }

Rat exact_det(const std::vector<std::vector<Rat>>& rows) {
    std::size_t n = rows.size();
    if (n == 0) return Rat(1);
    assert(rows[0].size() == n);
    // fraction Gauss is fine at the sizes used here
    std::vector<std::vector<Rat>> a = rows;
    Rat det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        Rat inv = Rat(1) / a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

uint64_t sturm_bound(unsigned k, uint64_t N) {
    return k * modforms::gamma0_index(N) / 12;
}

uint64_t sage_hypothesis_bound(unsigned k, uint64_t N) {
    return sturm_bound(k, N) + 2 * (uint64_t)modforms::dim_eis(k, N) + 5;
}

SpanReport minimal_hecke_bound(unsigned k, uint64_t N, uint64_t n_max,
                               const nf::CuspSource& cusp_source) {
    SpanReport rep;
    rep.weight = k;
    rep.level = N;
    rep.n_max = n_max;
    rep.sturm = sturm_bound(k, N);
    rep.sage_hypothesis = sage_hypothesis_bound(k, N);
    rep.dim = modforms::dim_modular(k, N);
    auto basis = modforms::full_space_basis(k, N, (unsigned)n_max,
                                            cusp_source);
    // incremental rational row reduction, a_0 excluded
    std::size_t cols = basis.size();
    std::vector<std::pair<std::size_t, std::vector<Rat>>> reduced;
    int rank = 0;
    for (uint64_t n = 1; n <= n_max; ++n) {
        std::vector<Rat> row;
        row.reserve(cols);
        for (const auto& f : basis) row.push_back(f.a[n]);
        for (const auto& [piv, rrow] : reduced) {
            if (row[piv] != 0) {
                Rat c = row[piv];
                for (std::size_t j = piv; j < cols; ++j)
                    row[j] -= c * rrow[j];
            }
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (row[j] != 0) {
                Rat inv = Rat(1) / row[j];
                for (std::size_t t = j; t < cols; ++t) row[t] *= inv;
                reduced.emplace_back(j, std::move(row));
                std::sort(reduced.begin(), reduced.end(),
                          [](const auto& a, const auto& b) {
                              return a.first < b.first;
                          });
                ++rank;
                break;
            }
        }
        rep.rank_trace.push_back(rank);
        if (rank == rep.dim) {
            rep.minimal_n = n;
            break;
        }
    }
    return rep;
}

std::vector<GeneratorEntry> theorem_generator_set(
    unsigned k, uint64_t N,
    const std::vector<std::pair<uint64_t, uint64_t>>& X_map) {
    (void)k;
    auto divs = arith::divisors(N);
    uint64_t max_x = 0;
    for (uint64_t M : divs) {
        bool found = false;
        for (auto& [mm, xx] : X_map)
            if (mm == M) {
                found = true;
                max_x = std::max(max_x, xx);
            }
        if (!found)
            throw usage_error("theorem_generator_set: X_map missing divisor " +
                              std::to_string(M));
    }
    auto pt = arith::sieve_primes(max_x);
    std::vector<GeneratorEntry> out;
    for (uint64_t M : divs) {
        uint64_t xm = 0;
        for (auto& [mm, xx] : X_map)
            if (mm == M) xm = xx;
        for (uint64_t p : pt.primes) {
            if (p > xm) break;
            if (M % p == 0) continue;
            out.push_back({p * (N / M), p, M});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.op_index, a.p, a.M) <
               std::tie(b.op_index, b.p, b.M);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) {
                              return a.op_index == b.op_index;
                          }),
              out.end());
    return out;
}

VerifyResult verify_generator_set(unsigned k, uint64_t N,
                                  const std::vector<uint64_t>& op_indices,
                                  const nf::CuspSource& cusp_source) {
    VerifyResult res;
    if (op_indices.empty()) return res;
    uint64_t max_n = *std::max_element(op_indices.begin(), op_indices.end());
    auto basis = modforms::full_space_basis(k, N, (unsigned)max_n,
                                            cusp_source);
    int dim = modforms::dim_modular(k, N);
    std::size_t cols = basis.size();
    std::vector<std::pair<std::size_t, std::vector<Rat>>> reduced;
    int rank = 0;
    for (uint64_t n : op_indices) {
        std::vector<Rat> row;
        for (const auto& f : basis) row.push_back(f.a[n]);
        for (const auto& [piv, rrow] : reduced) {
            if (row[piv] != 0) {
                Rat c = row[piv];
                for (std::size_t j = piv; j < cols; ++j)
                    row[j] -= c * rrow[j];
            }
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (row[j] != 0) {
                Rat inv = Rat(1) / row[j];
                for (std::size_t t = j; t < cols; ++t) row[t] *= inv;
                reduced.emplace_back(j, std::move(row));
                std::sort(reduced.begin(), reduced.end(),
                          [](const auto& a, const auto& b) {
                              return a.first < b.first;
                          });
                ++rank;
                res.certificate.push_back(n);
                break;
            }
        }
        if (rank == dim) break;
    }
    res.full_rank = (rank == dim);
    if (!res.full_rank) res.certificate.clear();
    return res;
}

namespace {

// interval with outward rounding for the witness determinant
struct Iv {
    double lo, hi;
    static Iv point(double x) { return {x, x}; }
    Iv operator+(const Iv& o) const {
        return {std::nextafter(lo + o.lo, -INFINITY),
                std::nextafter(hi + o.hi, INFINITY)};
    }
    Iv operator-(const Iv& o) const {
        return {std::nextafter(lo - o.hi, -INFINITY),
                std::nextafter(hi - o.lo, INFINITY)};
    }
    Iv operator*(const Iv& o) const {
        double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        double mn = std::min(std::min(a, b), std::min(c, d));
        double mx = std::max(std::max(a, b), std::max(c, d));
        return {std::nextafter(mn, -INFINITY), std::nextafter(mx, INFINITY)};
    }
    bool excludes_zero() const { return lo > 0.0 || hi < 0.0; }
};

Iv det_interval(const std::vector<std::vector<Iv>>& m) {
    // permutation expansion; m <= 5 here
    std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Iv acc{0.0, 0.0};
    int sign;
    do {
        sign = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        Iv term = Iv::point(1.0);
        for (std::size_t i = 0; i < n; ++i) term = term * m[i][perm[i]];
        if (sign < 0) term = Iv{0.0, 0.0} - term;
        acc = acc + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

}  // namespace

WitnessResult find_witness_primes(unsigned k, uint64_t M, uint64_t X,
                                  const nf::CuspSource& cusp_source) {
    if (!arith::is_squarefree(M))
        throw usage_error("find_witness_primes: M must be squarefree");
    // m = eps + s with eps = 1 for squarefree trivial-nebentypus levels
    int s = 0;
    std::vector<nf::NewformRecord> forms;
    for (uint64_t d : arith::divisors(M)) {
        int dn = modforms::dim_cusp_new(k, d);
        s += dn;
        if (dn > 0)
            for (auto& r : cusp_source.records(d, k))
                forms.push_back(std::move(r));
    }
    if ((int)forms.size() != s)
        throw data_unavailable("witness search: incomplete newform data",
                               (int)M, (int)k);
    unsigned m = 1 + (unsigned)s;
    auto pt = arith::sieve_primes(X);
    std::vector<uint64_t> primes;
    for (uint64_t p : pt.primes)
        if (M % p != 0) primes.push_back(p);
    if (primes.size() < m) return {};

    WitnessResult res;
    bool saw_indeterminate = false;
    std::vector<unsigned> idx(m);
    for (unsigned i = 0; i < m; ++i) idx[i] = i;
    auto next_comb = [&]() {
        int i = (int)m - 1;
        while (i >= 0 && idx[i] == primes.size() - m + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (unsigned j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };
    // exact route available when every form carries integral eigenvalues
    auto all_exact = [&](const std::vector<uint64_t>& ps) {
        for (const auto& f : forms)
            for (uint64_t p : ps)
                if (!f.ap_exact.count(p)) return false;
        return true;
    };
    do {
        std::vector<uint64_t> tuple;
        for (unsigned i = 0; i < m; ++i) tuple.push_back(primes[idx[i]]);
        if (all_exact(tuple)) {
            // row p scaled by p^{(k-1)/2}: [1 + p^{k-1} | a_p(f_j)], integral
            std::vector<std::vector<Rat>> mat(m, std::vector<Rat>(m));
            for (unsigned i = 0; i < m; ++i) {
                uint64_t p = tuple[i];
                mat[i][0] = Rat(1) + Rat(arith::ipow(p, k - 1));
                for (int j = 0; j < s; ++j)
                    mat[i][j + 1] = Rat(forms[j].ap_exact.at(p));
            }
            if (exact_det(mat) != 0) {
                res.status = WitnessResult::Status::found;
                res.primes = tuple;
                return res;
            }
            continue;
        }
        std::vector<std::vector<Iv>> mat(m, std::vector<Iv>(m));
        for (unsigned i = 0; i < m; ++i) {
            double p = (double)tuple[i];
            double ph = std::pow(p, (k - 1) / 2.0);
            // conservative relative slop on the embedded entries
            auto entry = [&](double v) {
                double e = std::abs(v) * 1e-12 + 1e-300;
                return Iv{v - e, v + e};
            };
            mat[i][0] = entry(1.0 / ph + ph);
            for (int j = 0; j < s; ++j) {
                auto it = forms[j].ap_hat.find(tuple[i]);
                if (it == forms[j].ap_hat.end())
                    throw data_unavailable(
                        "witness search: missing a_p at p = " +
                            std::to_string(tuple[i]),
                        (int)M, (int)k);
                mat[i][j + 1] = entry(it->second);
            }
        }
        Iv d = det_interval(mat);
        if (d.excludes_zero()) {
            res.status = WitnessResult::Status::found;
            res.primes = tuple;
            return res;
        }
        saw_indeterminate = true;
    } while (next_comb());
    res.status = saw_indeterminate ? WitnessResult::Status::indeterminate
                                   : WitnessResult::Status::none;
    return res;
}

}  // namespace heckespan::spanrank
