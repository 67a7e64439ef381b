#include "heckespan/detsum.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <functional>
#include <map>
#include <thread>

#include "heckespan/errors.hpp"
#include "heckespan/spanrank.hpp"

namespace heckespan::detsum {

using cplx = std::complex<double>;

bool BlockMatrixSpec::all_real() const {
    for (const auto& e : eis)
        if (!e.psi.is_real() || !e.phi.is_real()) return false;
    return true;
}

bool BlockMatrixSpec::all_exact() const {
    if (!all_real()) return false;
    for (const auto& c : cusp)
        if (!c.has_exact()) return false;
    return true;
}

namespace {

void check_primes(const BlockMatrixSpec& spec,
                  const std::vector<uint64_t>& primes) {
    if (primes.size() != spec.m())
        throw usage_error("es_matrix: need exactly m primes");
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (spec.M % primes[i] == 0)
            throw usage_error("es_matrix: prime divides M");
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            if (primes[i] == primes[j])
                throw usage_error("es_matrix: repeated primes");
    }
}

double ap_hat_of(const nf::NewformRecord& rec, uint64_t p) {
    auto it = rec.ap_hat.find(p);
    if (it == rec.ap_hat.end())
        throw data_unavailable("missing a_p for " + rec.label + " at p = " +
                                   std::to_string(p),
                               (int)rec.level, (int)rec.weight);
    return it->second;
}

}  // namespace

std::vector<std::vector<cplx>> es_matrix(const BlockMatrixSpec& spec,
                                         const std::vector<uint64_t>& primes) {
    check_primes(spec, primes);
    unsigned m = spec.m();
    std::vector<std::vector<cplx>> out(m, std::vector<cplx>(m));
    for (unsigned i = 0; i < m; ++i) {
        double p = (double)primes[i];
        double ph = std::pow(p, (spec.k - 1) / 2.0);
        for (std::size_t j = 0; j < spec.eis.size(); ++j) {
            cplx psi = spec.eis[j].psi.cvalue(primes[i]);
            cplx phi = spec.eis[j].phi.cvalue(primes[i]);
            out[i][j] = psi / ph + phi * ph;
        }
        for (std::size_t j = 0; j < spec.cusp.size(); ++j)
            out[i][spec.eis.size() + j] = ap_hat_of(spec.cusp[j].rec,
                                                    primes[i]);
    }
    return out;
}

std::vector<std::vector<Rat>> es_matrix_scaled_exact(
    const BlockMatrixSpec& spec, const std::vector<uint64_t>& primes) {
    check_primes(spec, primes);
    if (!spec.all_exact())
        throw usage_error("es_matrix_scaled_exact: spec has nonrational data");
    unsigned m = spec.m();
    std::vector<std::vector<Rat>> out(m, std::vector<Rat>(m));
    for (unsigned i = 0; i < m; ++i) {
        uint64_t p = primes[i];
        for (std::size_t j = 0; j < spec.eis.size(); ++j) {
            int psi = spec.eis[j].psi.real_value(p);
            int phi = spec.eis[j].phi.real_value(p);
            out[i][j] = Rat(psi) + Rat(phi) * Rat(arith::ipow(p, spec.k - 1));
        }
        for (std::size_t j = 0; j < spec.cusp.size(); ++j)
            out[i][spec.eis.size() + j] =
                Rat(spec.cusp[j].rec.ap_exact.at(p));
    }
    return out;
}

// --------------------------------------------------------------------
// rencontres
// --------------------------------------------------------------------

Int derangements(unsigned n) {
    if (n == 0) return 1;
    if (n == 1) return 0;
    Int a = 1, b = 0;  // D_0, D_1
    for (unsigned i = 2; i <= n; ++i) {
        Int c = Int(i - 1) * (b + a);
        a = b;
        b = c;
    }
    return b;
}

Int rencontres(unsigned l, unsigned gamma) {
    if (gamma > l) throw usage_error("rencontres: gamma > l");
    return arith::binomial(l, gamma) * derangements(l - gamma);
}

namespace {

// counts for all gamma at once, cached per (d, l)
const std::vector<Int>& eq_pair_counts(unsigned d, unsigned l) {
    static std::map<std::pair<unsigned, unsigned>, std::vector<Int>> cache;
    auto key = std::make_pair(d, l);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (d > 7) throw capacity_error("count_eq_pairs: d > 7");
    assert(l <= d);
    // D1 = {0..d-1}, D2 = {d-l..2d-l-1}; common = {d-l..d-1}
    std::vector<Int> counts(l + 1, Int(0));
    std::vector<int> p1(d), p2(d);
    for (unsigned i = 0; i < d; ++i) p1[i] = (int)i;
    do {
        for (unsigned i = 0; i < d; ++i) p2[i] = (int)i;
        do {
            unsigned eq = 0;
            // x in common: position x in D1 list, x-(d-l) in D2 list
            for (unsigned x = d - l; x < d; ++x)
                if (p1[x] == p2[x - (d - l)]) ++eq;
            counts[eq] += 1;
        } while (std::next_permutation(p2.begin(), p2.end()));
    } while (std::next_permutation(p1.begin(), p1.end()));
    return cache.emplace(key, std::move(counts)).first->second;
}

}  // namespace

Int count_eq_pairs(unsigned d, unsigned l, unsigned gamma) {
    if (l > d || gamma > l) throw usage_error("count_eq_pairs: bad arguments");
    return eq_pair_counts(d, l)[gamma];
}

Int formula_eq_pairs(unsigned d, unsigned l, unsigned gamma) {
    return arith::factorial(d) * arith::factorial(d - l) *
           rencontres(l, gamma);
}

std::vector<PairCountRow> eq_pairs_comparison(unsigned d_max) {
    std::vector<PairCountRow> rows;
    for (unsigned d = 1; d <= d_max; ++d)
        for (unsigned l = 0; l <= d; ++l)
            for (unsigned g = 0; g <= l; ++g) {
                PairCountRow r{d, l, g, count_eq_pairs(d, l, g),
                               formula_eq_pairs(d, l, g), false};
                r.agree = (r.brute == r.formula);
                rows.push_back(std::move(r));
            }
    return rows;
}

// --------------------------------------------------------------------
// summation estimates
// --------------------------------------------------------------------

EstimateRow first_estimate_literal(unsigned l, double T) {
    EstimateRow row;
    row.which = "first_literal";
    row.l = l;
    row.T = T;
    row.applicable = (l >= 1 && T >= 12.0 * l);
    double fact = arith::factorial(l).get_d();
    double s = 0.0;
    for (unsigned g = 0; g <= l; ++g)
        s += std::pow(T, (double)l) / arith::factorial(g).get_d();
    row.lhs = fact * s;
    row.rhs = std::log(l + 2.0) * std::pow(T, (double)l);
    row.ok = !row.applicable || row.lhs <= row.rhs;
    return row;
}

EstimateRow first_estimate_inferred(unsigned l, double A, double B) {
    EstimateRow row;
    row.which = "first_inferred";
    row.l = l;
    row.T = A;
    row.B = B;
    row.applicable = (l >= 1 && A >= 12.0 * l * B && B >= 0.0);
    double s = 0.0;
    for (unsigned g = 0; g + 1 <= l; ++g)
        s += rencontres(l, g).get_d() * std::pow(A, (double)g) *
             std::pow(B, (double)(l - g));
    row.lhs = s;
    row.rhs = (double)l * std::log(l + 2.0) * std::pow(A, (double)l - 1.0) * B;
    row.ok = !row.applicable || row.lhs <= row.rhs;
    return row;
}

EstimateRow second_estimate(unsigned m, unsigned k, uint64_t T) {
    EstimateRow row;
    row.which = "second";
    row.m = m;
    row.k = k;
    row.T = (double)T;
    row.applicable = (m >= 1 && T >= 6ull * m * (m + k));
    Rat lhs(0);
    Rat mf(arith::factorial(m)), mkf(arith::factorial(m + k));
    Rat Tp(1);
    for (unsigned l = 0; l <= m; ++l) {
        lhs += mf * mkf * Tp /
               (Rat(arith::factorial(l)) * Rat(arith::factorial(k + l)));
        Tp *= Rat((long)T);
    }
    row.lhs = lhs.get_d();
    row.rhs = std::log(m + 2.0) * std::log(m + k + 2.0) *
              std::pow((double)T, (double)m);
    row.ok = !row.applicable || row.lhs <= row.rhs;
    return row;
}

std::vector<EstimateRow> combinatorial_estimate_check(unsigned l_max,
                                                      unsigned m_max,
                                                      unsigned k_max,
                                                      uint64_t T_max) {
    std::vector<EstimateRow> rows;
    for (unsigned l = 1; l <= l_max; ++l) {
        for (double T : {12.0 * l, 144.0, 10000.0, (double)T_max}) {
            if (T > (double)T_max) continue;
            rows.push_back(first_estimate_literal(l, T));
        }
        for (double B : {1.0, 7.0}) {
            for (double A : {12.0 * l * B, 250.0 * l * B}) {
                rows.push_back(first_estimate_inferred(l, A, B));
            }
        }
    }
    for (unsigned m = 1; m <= m_max; ++m)
        for (unsigned k = 0; k <= k_max; ++k) {
            uint64_t T0 = 6ull * m * (m + k);
            for (uint64_t T : {T0, T0 * 12, T0 * 144}) {
                if (T > T_max) continue;
                rows.push_back(second_estimate(m, k, T));
            }
        }
    return rows;
}

// --------------------------------------------------------------------
// determinant-square sums
// --------------------------------------------------------------------

namespace {

cplx det_small(std::vector<std::vector<cplx>> a) {
    std::size_t n = a.size();
    cplx det{1.0, 0.0};
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        double best = std::abs(a[c][c]);
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::abs(a[i][c]) > best) {
                best = std::abs(a[i][c]);
                piv = i;
            }
        if (best == 0.0) return {0.0, 0.0};
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            cplx f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

std::vector<uint64_t> usable_primes(const BlockMatrixSpec& spec, double X) {
    auto pt = arith::sieve_primes((uint64_t)X);
    std::vector<uint64_t> primes;
    for (uint64_t p : pt.primes)
        if (spec.M % p != 0) primes.push_back(p);
    return primes;
}

}  // namespace

DetSumResult det_square_sum(const BlockMatrixSpec& spec, double X,
                            const DetSumOptions& opts) {
    unsigned m = spec.m();
    if (m == 0 || m > 4)
        throw capacity_error("det_square_sum: m must be in 1..4");
    auto primes = usable_primes(spec, X);
    if (primes.size() > 60) {
        double cost = std::pow((double)primes.size(), (double)m);
        throw capacity_error("det_square_sum: pi_M(X) = " +
                             std::to_string(primes.size()) +
                             " exceeds 60 (approx " +
                             std::to_string((uint64_t)cost) + " tuples)");
    }
    DetSumResult res;
    if (primes.empty()) return res;
    std::size_t np = primes.size();
    bool exact = spec.all_exact() && spec.all_real();
    Rat exact_acc(0);

    // per-outer-index subtotals keep worker count out of the rounding
    std::vector<double> subtotals(np, 0.0);
    std::vector<Rat> exact_subtotals(np, Rat(0));
    std::vector<uint64_t> subcounts(np, 0);

    auto run_outer = [&](std::size_t first) {
        std::vector<std::size_t> idx(m, 0);
        idx[0] = first;
        double acc = 0.0;
        Rat eacc(0);
        uint64_t cnt = 0;
        // odometer over remaining positions
        std::vector<std::size_t> rest(m > 1 ? m - 1 : 0, 0);
        bool done = false;
        while (!done) {
            for (unsigned i = 1; i < m; ++i) idx[i] = rest[i - 1];
            bool skip = false;
            if (opts.distinct_primes) {
                for (unsigned i = 0; i < m && !skip; ++i)
                    for (unsigned j = i + 1; j < m; ++j)
                        if (idx[i] == idx[j]) { skip = true; break; }
            }
            if (!skip) {
                std::vector<uint64_t> tuple(m);
                bool repeated = false;
                for (unsigned i = 0; i < m; ++i) tuple[i] = primes[idx[i]];
                for (unsigned i = 0; i < m && !repeated; ++i)
                    for (unsigned j = i + 1; j < m; ++j)
                        if (tuple[i] == tuple[j]) { repeated = true; break; }
                ++cnt;
                if (repeated) {
                    // determinant vanishes on repeated rows
                } else if (exact) {
                    auto sm = es_matrix_scaled_exact(spec, tuple);
                    Rat d = spanrank::exact_det(sm);
                    Rat scale(1);
                    for (uint64_t p : tuple)
                        scale /= Rat(arith::ipow(p, spec.k - 1));
                    eacc += d * d * scale;
                    acc += (d * d * scale).get_d();
                } else {
                    auto cm = es_matrix(spec, tuple);
                    cplx d = det_small(std::move(cm));
                    acc += std::norm(d);
                }
            }
            // advance odometer
            if (m == 1) break;
            unsigned pos = 0;
            for (;;) {
                if (++rest[pos] < np) break;
                rest[pos] = 0;
                if (++pos == m - 1) { done = true; break; }
            }
        }
        subtotals[first] = acc;
        exact_subtotals[first] = eacc;
        subcounts[first] = cnt;
    };

    unsigned workers = std::max(1u, opts.workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < np; ++i) run_outer(i);
    } else {
        std::vector<std::thread> threads;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < workers; ++w)
            threads.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= np) break;
                    run_outer(i);
                }
            });
        for (auto& t : threads) t.join();
    }
    for (std::size_t i = 0; i < np; ++i) {
        res.raw += subtotals[i];
        exact_acc += exact_subtotals[i];
        res.tuples += subcounts[i];
    }
    double norm = std::pow(4.0, (double)spec.cusp.size()) /
                  arith::factorial(m).get_d();
    if (exact) {
        res.exact_raw = exact_acc;
        res.raw = exact_acc.get_d();
    }
    res.normalized = norm * res.raw;
    return res;
}

// --------------------------------------------------------------------
// pairwise expansion route
// --------------------------------------------------------------------

namespace {

// all size-e subsets of {0..m-1}, ascending
std::vector<std::vector<unsigned>> subsets_of_size(unsigned m, unsigned e) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned)> rec = [&](unsigned start) {
        if (cur.size() == e) {
            out.push_back(cur);
            return;
        }
        for (unsigned i = start; i + (e - cur.size()) <= m; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

int laplace_sign(const std::vector<unsigned>& alpha) {
    // (-1)^{sum (alpha_i+1) + sum_{i<=eps} i}, rows 1-based
    unsigned s = 0;
    for (unsigned i = 0; i < alpha.size(); ++i)
        s += (alpha[i] + 1) + (i + 1);
    return s % 2 == 0 ? 1 : -1;
}

Rat det_exact_minor(const std::vector<std::vector<Rat>>& m,
                    const std::vector<unsigned>& rows,
                    unsigned col_begin, unsigned col_end) {
    std::vector<std::vector<Rat>> sub;
    for (unsigned r : rows) {
        std::vector<Rat> row;
        for (unsigned c = col_begin; c < col_end; ++c) row.push_back(m[r][c]);
        sub.push_back(std::move(row));
    }
    return spanrank::exact_det(sub);
}

// permutations of {0..n-1} with parity
void for_each_perm(unsigned n,
                   const std::function<void(const std::vector<unsigned>&,
                                            int)>& fn) {
    std::vector<unsigned> p(n);
    for (unsigned i = 0; i < n; ++i) p[i] = i;
    do {
        int inv = 0;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        fn(p, inv % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

Rat det_square_sum_exact_direct(const BlockMatrixSpec& spec, double X) {
    unsigned m = spec.m();
    auto primes = usable_primes(spec, X);
    std::size_t np = primes.size();
    if (std::pow((double)np, (double)m) > 2e6)
        throw capacity_error("det_square_sum_exact_direct: too many tuples");
    Rat acc(0);
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
        std::vector<uint64_t> tuple(m);
        for (unsigned i = 0; i < m; ++i) tuple[i] = primes[idx[i]];
        bool repeated = false;
        for (unsigned i = 0; i < m && !repeated; ++i)
            for (unsigned j = i + 1; j < m; ++j)
                if (tuple[i] == tuple[j]) { repeated = true; break; }
        if (!repeated) {
            auto sm = es_matrix_scaled_exact(spec, tuple);
            Rat d = spanrank::exact_det(sm);
            Rat scale(1);
            for (uint64_t p : tuple) scale /= Rat(arith::ipow(p, spec.k - 1));
            acc += d * d * scale;
        }
        unsigned pos = 0;
        for (;;) {
            if (++idx[pos] < np) break;
            idx[pos] = 0;
            if (++pos == m) return acc;
        }
    }
}

Rat det_square_sum_pair_expansion(const BlockMatrixSpec& spec, double X) {
    unsigned m = spec.m();
    unsigned eps = spec.eis.size();
    unsigned s = spec.cusp.size();
    auto primes = usable_primes(spec, X);
    std::size_t np = primes.size();
    if (std::pow((double)np, (double)m) > 2e6)
        throw capacity_error("pair expansion: too many tuples");
    auto alphas = subsets_of_size(m, eps);
    Rat total(0);
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
        std::vector<uint64_t> tuple(m);
        for (unsigned i = 0; i < m; ++i) tuple[i] = primes[idx[i]];
        bool repeated = false;
        for (unsigned i = 0; i < m && !repeated; ++i)
            for (unsigned j = i + 1; j < m; ++j)
                if (tuple[i] == tuple[j]) { repeated = true; break; }
        if (!repeated) {
            auto sm = es_matrix_scaled_exact(spec, tuple);
            Rat scale(1);
            for (uint64_t p : tuple) scale /= Rat(arith::ipow(p, spec.k - 1));
            // sum over (alpha1, alpha2), each det expanded over bijections
            for (const auto& a1 : alphas)
                for (const auto& a2 : alphas) {
                    std::vector<unsigned> b1, b2;
                    for (unsigned i = 0; i < m; ++i) {
                        if (std::find(a1.begin(), a1.end(), i) == a1.end())
                            b1.push_back(i);
                        if (std::find(a2.begin(), a2.end(), i) == a2.end())
                            b2.push_back(i);
                    }
                    int sgn = laplace_sign(a1) * laplace_sign(a2);
                    Rat block(0);
                    // det(E_{a1}) det(E_{a2}) det(S_{b1}) det(S_{b2})
                    // expanded over bijections sigma_i, tau_i with the
                    // per-element product grouped as in the proof
                    for_each_perm(eps, [&](const std::vector<unsigned>& s1,
                                           int sg1) {
                        for_each_perm(eps, [&](const std::vector<unsigned>& s2,
                                               int sg2) {
                            for_each_perm(s, [&](const std::vector<unsigned>&
                                                     t1,
                                                 int sg3) {
                                for_each_perm(
                                    s, [&](const std::vector<unsigned>& t2,
                                           int sg4) {
                                        Rat prod(1);
                                        // E factors over alpha_1, alpha_2
                                        for (unsigned i = 0; i < eps; ++i)
                                            prod *= sm[a1[i]][s1[i]];
                                        for (unsigned i = 0; i < eps; ++i)
                                            prod *= sm[a2[i]][s2[i]];
                                        // S factors over beta_1, beta_2
                                        for (unsigned i = 0; i < s; ++i)
                                            prod *= sm[b1[i]][eps + t1[i]];
                                        for (unsigned i = 0; i < s; ++i)
                                            prod *= sm[b2[i]][eps + t2[i]];
                                        block += Rat(sg1 * sg2 * sg3 * sg4) *
                                                 prod;
                                    });
                            });
                        });
                    });
                    total += Rat(sgn) * block * scale;
                }
        }
        unsigned pos = 0;
        for (;;) {
            if (++idx[pos] < np) break;
            idx[pos] = 0;
            if (++pos == m) return total;
        }
    }
}

bool laplace_expansion_check(const std::vector<std::vector<Rat>>& mat,
                             unsigned eps) {
    unsigned m = mat.size();
    if (m > 6) throw capacity_error("laplace_expansion_check: m > 6");
    if (eps > m) throw usage_error("laplace_expansion_check: eps > m");
    Rat direct = spanrank::exact_det(mat);
    Rat acc(0);
    for (const auto& alpha : subsets_of_size(m, eps)) {
        std::vector<unsigned> beta;
        for (unsigned i = 0; i < m; ++i)
            if (std::find(alpha.begin(), alpha.end(), i) == alpha.end())
                beta.push_back(i);
        Rat de = det_exact_minor(mat, alpha, 0, eps);
        Rat ds = det_exact_minor(mat, beta, eps, m);
        acc += Rat(laplace_sign(alpha)) * de * ds;
    }
    return acc == direct;
}

}  // namespace heckespan::detsum
