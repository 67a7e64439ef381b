#include "heckespan/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include <mpfr.h>

#include "heckespan/errors.hpp"
#include "heckespan/modforms.hpp"

namespace heckespan::bounds {

double alpha_const(unsigned k, double M) {
    return 2605.0 + 87.0 * (double)k + (248.0 + 6.0 * (double)k) * std::log(M);
}

// --------------------------------------------------------------------
// directed-rounding evaluation of the four conditions
// --------------------------------------------------------------------

namespace {

// thin RAII wrapper; every operation takes an explicit rounding mode
struct Big {
    mpfr_t v;
    explicit Big(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    Big(const Big&) = delete;
    Big(Big&& o) noexcept { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_swap(v, o.v); }
    ~Big() { mpfr_clear(v); }
};

// lhs_i / rhs_i of condition c at X, rounded toward `down ? -inf : +inf`
// conditions: 1: X            >= max{6(k+1)^2, M, 17.33}
//             2: X/log^4 X    >= 60 k (a+1)^2 (e+1)(s+1) log(e+3) log(s+3)
//             3: X^{1/2}/log^2 X >= max{12(a+1) s log(s+3), k e (a+1)^2 + 1}
//             4: X^{k/2}/log^2 X >= 24 k (a+1)(e+1) log(e+3)
void eval_condition(int c, const Int& X, const BoundInput& in,
                    mpfr_prec_t prec, bool lhs_down, mpfr_t lhs, mpfr_t rhs) {
    mpfr_rnd_t L = lhs_down ? MPFR_RNDD : MPFR_RNDU;
    mpfr_rnd_t Lo = lhs_down ? MPFR_RNDU : MPFR_RNDD;  // opposite, for denoms
    mpfr_rnd_t R = lhs_down ? MPFR_RNDU : MPFR_RNDD;   // rhs rounded other way
    Big x(prec), lx(prec), t(prec), alpha(prec), a1(prec);
    mpfr_set_z(x.v, X.get_mpz_t(), MPFR_RNDN);  // X exact (prec >= bits)
    // alpha rounded in the rhs direction
    mpfr_set_ui(t.v, in.M, MPFR_RNDN);
    mpfr_log(alpha.v, t.v, R);
    mpfr_mul_ui(alpha.v, alpha.v, 248 + 6 * in.k, R);
    mpfr_add_ui(alpha.v, alpha.v, 2605 + 87 * in.k, R);
    mpfr_add_ui(a1.v, alpha.v, 1, R);

    switch (c) {
        case 1: {
            mpfr_set(lhs, x.v, L);
            mpfr_set_d(rhs, 17.33, R);
            mpfr_set_ui(t.v, 6 * (in.k + 1) * (in.k + 1), MPFR_RNDN);
            mpfr_max(rhs, rhs, t.v, R);
            mpfr_set_ui(t.v, in.M, MPFR_RNDN);
            mpfr_max(rhs, rhs, t.v, R);
            return;
        }
        case 2: {
            mpfr_log(lx.v, x.v, Lo);
            mpfr_pow_ui(lx.v, lx.v, 4, Lo);
            mpfr_div(lhs, x.v, lx.v, L);
            mpfr_sqr(rhs, a1.v, R);
            mpfr_mul_ui(rhs, rhs, 60 * in.k, R);
            mpfr_mul_ui(rhs, rhs, (unsigned)(in.eps + 1), R);
            mpfr_mul_ui(rhs, rhs, (unsigned)(in.s + 1), R);
            mpfr_set_ui(t.v, (unsigned)(in.eps + 3), MPFR_RNDN);
            mpfr_log(t.v, t.v, R);
            mpfr_mul(rhs, rhs, t.v, R);
            mpfr_set_ui(t.v, (unsigned)(in.s + 3), MPFR_RNDN);
            mpfr_log(t.v, t.v, R);
            mpfr_mul(rhs, rhs, t.v, R);
            return;
        }
        case 3: {
            mpfr_sqrt(lhs, x.v, L);
            mpfr_log(lx.v, x.v, Lo);
            mpfr_sqr(lx.v, lx.v, Lo);
            mpfr_div(lhs, lhs, lx.v, L);
            // rhs = max{12(a+1) s log(s+3), k e (a+1)^2 + 1}
            Big r1(prec), r2(prec);
            mpfr_set_ui(t.v, (unsigned)(in.s + 3), MPFR_RNDN);
            mpfr_log(t.v, t.v, R);
            mpfr_mul(r1.v, a1.v, t.v, R);
            mpfr_mul_ui(r1.v, r1.v, 12 * (unsigned)std::max(in.s, 0), R);
            mpfr_sqr(r2.v, a1.v, R);
            mpfr_mul_ui(r2.v, r2.v, in.k * (unsigned)std::max(in.eps, 0), R);
            mpfr_add_ui(r2.v, r2.v, 1, R);
            mpfr_max(rhs, r1.v, r2.v, R);
            return;
        }
        case 4: {
            mpfr_pow_ui(lhs, x.v, in.k / 2, L);
            mpfr_log(lx.v, x.v, Lo);
            mpfr_sqr(lx.v, lx.v, Lo);
            mpfr_div(lhs, lhs, lx.v, L);
            mpfr_set_ui(t.v, (unsigned)(in.eps + 3), MPFR_RNDN);
            mpfr_log(t.v, t.v, R);
            mpfr_mul(rhs, a1.v, t.v, R);
            mpfr_mul_ui(rhs, rhs, 24 * in.k, R);
            mpfr_mul_ui(rhs, rhs, (unsigned)(in.eps + 1), R);
            return;
        }
    }
    throw usage_error("bad condition index");
}

// certified comparison lhs >= rhs; escalates precision until decisive
bool condition_holds(int c, const Int& X, const BoundInput& in) {
    for (mpfr_prec_t prec = 192; prec <= 1536; prec *= 2) {
        Big lhs(prec), rhs(prec);
        // lhs lower bound vs rhs upper bound: certified satisfied
        eval_condition(c, X, in, prec, true, lhs.v, rhs.v);
        if (mpfr_cmp(lhs.v, rhs.v) >= 0) return true;
        // lhs upper bound vs rhs lower bound: certified violated
        Big lhs2(prec), rhs2(prec);
        eval_condition(c, X, in, prec, false, lhs2.v, rhs2.v);
        if (mpfr_cmp(lhs2.v, rhs2.v) < 0) return false;
    }
    throw capacity_error("condition comparison not decidable at 1536 bits");
}

double eval_mid(int c, const Int& X, const BoundInput& in, bool lhs_side) {
    Big lhs(256), rhs(256);
    eval_condition(c, X, in, 256, true, lhs.v, rhs.v);
    return mpfr_get_d(lhs_side ? lhs.v : rhs.v, MPFR_RNDN);
}

}  // namespace

std::array<Condition, 4> thm_main_inequalities(const Int& X,
                                               const BoundInput& in) {
    if (X <= 1) throw usage_error("thm_main_inequalities requires X > 1");
    std::array<Condition, 4> out;
    for (int c = 1; c <= 4; ++c) {
        Condition& cond = out[c - 1];
        cond.lhs = eval_mid(c, X, in, true);
        cond.rhs = eval_mid(c, X, in, false);
        cond.ok = condition_holds(c, X, in);
    }
    return out;
}

namespace {

bool all_ok(const Int& X, const BoundInput& in) {
    for (int c = 1; c <= 4; ++c)
        if (!condition_holds(c, X, in)) return false;
    return true;
}

}  // namespace

BoundResult solve_X_M(const BoundInput& in) {
    if (!arith::is_squarefree(in.M))
        throw usage_error("solve_X_M: M must be squarefree");
    BoundResult res;
    res.alpha = alpha_const(in.k, (double)in.M);
    // every condition's satisfied-set is upward closed beyond this floor:
    // x/log^4 x and sqrt(x)/log^2 x increase for x > e^4, and the
    // condition-1 floor 6(k+1)^2 >= 150 > e^4.
    Int floor_x = std::max<long>(6L * (in.k + 1) * (in.k + 1),
                                 std::max<long>((long)in.M, 55L));
    if (floor_x < 18) floor_x = 18;
    Int lo = floor_x, hi = floor_x;
    while (!all_ok(hi, in)) {
        lo = hi + 1;
        hi *= 2;
    }
    // minimal admissible X in (lo-1, hi]
    while (lo < hi) {
        Int mid = (lo + hi) / 2;
        if (all_ok(mid, in))
            hi = mid;
        else
            lo = mid + 1;
    }
    res.X_M = lo;
    res.at_X = thm_main_inequalities(res.X_M, in);
    for (const auto& c : res.at_X) assert(c.ok);
    res.at_prev = thm_main_inequalities(res.X_M - 1, in);
    res.binding = 0;
    for (int c = 0; c < 4; ++c)
        if (!res.at_prev[c].ok) { res.binding = c + 1; break; }
    assert(res.binding != 0);
    return res;
}

Int corollary_n(unsigned k, uint64_t N) {
    // the corollary's system uses the full-space dimensions at level N
    BoundInput in;
    in.k = k;
    in.M = N;
    in.s = modforms::dim_cusp(k, N);
    in.eps = modforms::dim_eis(k, N);
    return Int(N) * solve_X_M(in).X_M;
}

// --------------------------------------------------------------------
// lemma catalog
// --------------------------------------------------------------------

double lemma_rhs(Lemma which, const LemmaParams& p) {
    const double k = (double)p.k;
    const double lM = std::log(p.M);
    switch (which) {
        case Lemma::gammabound:
            return 13.18 + 4.0 * std::log(std::abs(p.s) + k + 2.0);
        case Lemma::Nbound:
            if (std::abs(p.T) < 1.0)
                throw usage_error("Nbound requires |T| >= 1");
            return 33.5 + 4.34 * lM +
                   8.67 * std::log(std::abs(p.T) + k + 4.0);
        case Lemma::Nstar:
            if (p.j < 0) throw usage_error("Nstar requires j >= 0");
            return 25.77 + 3.34 * lM + 6.67 * std::log(p.j + k + 4.5);
        case Lemma::verticalstrip:
            if (p.T < 1.0) throw usage_error("verticalstrip requires T >= 1");
            return 103.48 + 10.87 * lM +
                   29.74 * std::log(std::abs(p.T) + k + 5.0);
        case Lemma::leftward:
            if (p.T < 1.0) throw usage_error("leftward requires T >= 1");
            return 40.23 + 4.0 * lM +
                   8.0 * std::log(std::abs(p.sigma) + std::abs(p.T) + k + 3.0);
        case Lemma::partialperron: {
            if (p.X < 4.0) throw usage_error("partialperron requires X >= 4");
            double sx = std::sqrt(p.X);
            return 33.39 + 16.68 * std::log(k + 5.5) + 5.38 * lM +
                   sx * (1230.84 + 29.15 * k + 157.84 * lM +
                         3.78 * k * lM + 60.03 * std::log(k + 7.5)) +
                   0.66 * std::log(sx + k + 3.25) +
                   sx * std::log(sx + k + 4.5) *
                       (291.82 + 7.55 * k + 1.67 * lM +
                        3.34 * std::log(p.X));
        }
        case Lemma::nontruncated:
        case Lemma::thetabound: {
            if (p.X < 17.33)
                throw usage_error("perron/theta bounds require X >= 17.33");
            double lx = std::log(p.X);
            double xl = std::pow(p.X, p.ell);
            double xph = xl * std::sqrt(p.X);
            double lead = which == Lemma::thetabound ? 367.5 : 340.78;
            double mid = which == Lemma::thetabound ? 33.86 : 31.86;
            return xph * lx * (lead + 7.55 * k + 1.67 * lM + 28.72 * lx) +
                   xph * (1230.84 + 29.15 * k + 157.84 * lM +
                          3.78 * k * lM + 60.03 * std::log(k + 7.5)) +
                   mid * xl * lx +
                   xl * (33.39 + 16.68 * std::log(k + 5.5) + 5.38 * lM +
                         31.2 * lx) +
                   4.0 * xl / std::sqrt(p.X) * lx;
        }
        case Lemma::Sbound:
            return 2595.0 + 87.0 * k + (248.0 + 6.0 * k) * lM;
        case Lemma::vonMangoldt:
            if (p.sigma <= 1.0)
                throw usage_error("vonMangoldt requires sigma > 1");
            return 4.0 * zeta_prime_abs(p.sigma) / zeta_value(p.sigma);
    }
    throw usage_error("unknown lemma");
}

// --------------------------------------------------------------------
// digamma
// --------------------------------------------------------------------

std::complex<double> digamma(std::complex<double> z) {
    // poles at nonpositive integers
    if (std::abs(z.imag()) < 1e-12 &&
        std::abs(z.real() - std::round(z.real())) < 1e-12 &&
        z.real() < 0.5)
        throw usage_error("digamma evaluated at a pole");
    std::complex<double> acc{0.0, 0.0};
    while (std::abs(z) < 24.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // asymptotic series: log z - 1/(2z) - sum B_{2n} / (2n z^{2n})
    static const double b2n[] = {1.0 / 6,  -1.0 / 30, 1.0 / 42, -1.0 / 30,
                                 5.0 / 66, -691.0 / 2730, 7.0 / 6};
    std::complex<double> w = std::log(z) - 0.5 / z;
    std::complex<double> z2 = z * z, zp = z2;
    for (int n = 1; n <= 7; ++n) {
        w -= b2n[n - 1] / (2.0 * n * zp);
        zp *= z2;
    }
    return acc + w;
}

std::complex<double> gamma_factor_logderiv(GammaVariant v,
                                           std::complex<double> s,
                                           unsigned k, int delta_chi) {
    const double log_pi = std::log(M_PI);
    const double log_2pi = std::log(2.0 * M_PI);
    auto dlog_gamma_R = [&](std::complex<double> x) {
        return -0.5 * log_pi + 0.5 * digamma(x / 2.0);
    };
    auto dlog_gamma_C = [&](std::complex<double> x) {
        return -log_2pi + digamma(x);
    };
    switch (v) {
        case GammaVariant::Sym2:
            return dlog_gamma_R(s + 1.0) +
                   dlog_gamma_C(s + (double)(k - 1));
        case GammaVariant::Tensor:
            return dlog_gamma_C(s) + dlog_gamma_C(s + (double)(k - 1));
        case GammaVariant::Char:
            return dlog_gamma_R(s + (double)delta_chi);
        case GammaVariant::Twist:
            return dlog_gamma_C(s + (double)(k - 1) / 2.0);
    }
    throw usage_error("unknown gamma variant");
}

bool digamma_check(GammaVariant v, std::complex<double> s, unsigned k,
                   int delta_chi) {
    if (s.imag() < 1.0)
        throw usage_error("digamma_check requires Im(s) >= 1");
    auto val = gamma_factor_logderiv(v, s, k, delta_chi);
    LemmaParams p;
    p.k = k;
    p.s = s;
    return std::abs(val) <= lemma_rhs(Lemma::gammabound, p);
}

// --------------------------------------------------------------------
// zeta by truncated Dirichlet series + Euler-Maclaurin tail
// --------------------------------------------------------------------

double zeta_value(double sigma) {
    if (sigma <= 1.0) throw usage_error("zeta_value requires sigma > 1");
    const uint64_t T = 200000;
    double s = 0.0, c = 0.0;
    for (uint64_t n = 1; n <= T; ++n) {
        double t = std::pow((double)n, -sigma);
        double y = t - c, u = s + y;
        c = (u - s) - y;
        s = u;
    }
    // tail: T^{1-sigma}/(sigma-1) + T^{-sigma}/2 + sigma T^{-sigma-1}/12
    double tail = std::pow((double)T, 1.0 - sigma) / (sigma - 1.0) +
                  0.5 * std::pow((double)T, -sigma) +
                  sigma * std::pow((double)T, -sigma - 1.0) / 12.0;
    return s + tail;
}

double zeta_prime_abs(double sigma) {
    if (sigma <= 1.0) throw usage_error("zeta_prime_abs requires sigma > 1");
    const uint64_t T = 200000;
    double s = 0.0, c = 0.0;
    for (uint64_t n = 2; n <= T; ++n) {
        double t = std::log((double)n) * std::pow((double)n, -sigma);
        double y = t - c, u = s + y;
        c = (u - s) - y;
        s = u;
    }
    double lT = std::log((double)T);
    // tail of sum log(n) n^{-sigma} via integral + midpoint correction
    double tail = std::pow((double)T, 1.0 - sigma) *
                      (lT / (sigma - 1.0) + 1.0 / ((sigma - 1.0) * (sigma - 1.0))) +
                  0.5 * lT * std::pow((double)T, -sigma);
    return s + tail;  // = |zeta'(sigma)| since zeta' < 0 on (1, inf)
}

// --------------------------------------------------------------------
// auxiliary bounds
// --------------------------------------------------------------------

std::vector<AuxRow> auxbounds_check(const std::vector<double>& X_grid,
                                    const std::vector<unsigned>& k_grid,
                                    const std::vector<uint64_t>& M_grid,
                                    const arith::PrimeTable& pt) {
    std::vector<AuxRow> rows;
    for (unsigned k : k_grid) {
        for (double X : X_grid) {
            double lhs = arith::prime_power_sum(1, (double)k, X, pt);
            // upper: pi_{1,k}(X) <= 1.26 X^{k+1}/log X  (X >= 17)
            AuxRow up;
            up.name = "pi_upper";
            up.param1 = X;
            up.param2 = k;
            up.applicable = X >= 17.0;
            up.lhs = lhs;
            up.rhs = 1.26 * std::pow(X, (double)k + 1.0) / std::log(X);
            up.ok = !up.applicable || up.lhs <= up.rhs;
            up.margin = up.lhs > 0 ? up.rhs / up.lhs : 0.0;
            rows.push_back(up);
            // lower: pi_{1,k}(X) >= X^{k+1}/(2(k+1) log X),
            // X >= max{6(k+1)^2, 17}; the 2 drops when k = 0
            AuxRow low;
            low.name = "pi_lower";
            low.param1 = X;
            low.param2 = k;
            low.applicable = X >= std::max(6.0 * (k + 1.0) * (k + 1.0), 17.0);
            double denom = (k == 0 ? 1.0 : 2.0) * (k + 1.0);
            low.lhs = lhs;
            low.rhs = std::pow(X, (double)k + 1.0) / (denom * std::log(X));
            low.ok = !low.applicable || low.lhs >= low.rhs;
            low.margin = low.rhs > 0 ? low.lhs / low.rhs : 0.0;
            rows.push_back(low);
            // deviation: |pi_{M,k} - pi_{1,k}| <= 2.46 log(M) M^k
            for (uint64_t M : M_grid) {
                if (M <= 1) continue;
                AuxRow dev;
                dev.name = "pi_deviation";
                dev.param1 = X;
                dev.param2 = (double)M * 1000.0 + k;
                double lhsM = arith::prime_power_sum(M, (double)k, X, pt);
                dev.lhs = std::abs(lhs - lhsM);
                dev.rhs = 2.46 * std::log((double)M) *
                          std::pow((double)M, (double)k);
                dev.ok = dev.lhs <= dev.rhs;
                dev.margin = dev.lhs > 0 ? dev.rhs / dev.lhs : INFINITY;
                rows.push_back(dev);
            }
            // shifted Chebyshev: sum_{p<=Y} p^m log p <= 2.01 Y^{m+1}
            AuxRow ch;
            ch.name = "theta_shifted";
            ch.param1 = X;
            ch.param2 = k;
            double acc = 0.0, comp = 0.0;
            for (uint64_t p : pt.primes) {
                if ((double)p > X) break;
                double t = std::pow((double)p, (double)k) *
                           std::log((double)p);
                double y = t - comp, u = acc + y;
                comp = (u - acc) - y;
                acc = u;
            }
            ch.lhs = acc;
            ch.rhs = 2.01 * std::pow(X, (double)k + 1.0);
            ch.applicable = X >= 2.0;
            ch.ok = !ch.applicable || ch.lhs <= ch.rhs;
            ch.margin = ch.lhs > 0 ? ch.rhs / ch.lhs : INFINITY;
            rows.push_back(ch);
        }
    }
    return rows;
}

std::pair<double, bool> scan_pi_upper(uint64_t limit,
                                      const arith::PrimeTable& pt) {
    double worst = 0.0;
    bool ok = true;
    std::size_t idx = 0;
    uint64_t count = 0;
    for (uint64_t X = 17; X <= limit; ++X) {
        while (idx < pt.primes.size() && pt.primes[idx] <= X) {
            ++idx;
            ++count;
        }
        double ratio = (double)count * std::log((double)X) / (1.26 * (double)X);
        if (ratio > worst) worst = ratio;
        if (ratio > 1.0) ok = false;
    }
    return {worst, ok};
}

std::pair<double, bool> scan_theta_upper(uint64_t limit,
                                         const arith::PrimeTable& pt) {
    double worst = 0.0;
    bool ok = true;
    double theta = 0.0, comp = 0.0;
    std::size_t idx = 0;
    for (uint64_t Y = 2; Y <= limit; ++Y) {
        while (idx < pt.primes.size() && pt.primes[idx] <= Y) {
            double t = std::log((double)pt.primes[idx]);
            double y = t - comp, u = theta + y;
            comp = (u - theta) - y;
            theta = u;
            ++idx;
        }
        double ratio = theta / (1.01 * (double)Y);
        if (ratio > worst) worst = ratio;
        if (ratio > 1.0) ok = false;
    }
    return {worst, ok};
}

// --------------------------------------------------------------------
// determinant envelope
// --------------------------------------------------------------------

EnvelopeResult prop_determinant_envelope(const BoundInput& in,
                                         const EnvelopeSums& sm) {
    EnvelopeResult res;
    const double s = (double)in.s, eps = (double)in.eps;
    auto powi = [](double b, double e) {
        return e <= 0.0 ? 1.0 : std::pow(b, e);
    };
    double HpM = sm.H + sm.pi_M;
    double EpK = sm.E + sm.pi_M_k1;
    double Q = in.s == 0
                   ? 0.0
                   : powi(HpM, s) - powi(sm.pi_M, s) +
                         s * std::log(s + 3.0) * powi(HpM, s - 1.0) * sm.H;
    res.main_term = powi(sm.pi_M, s) * powi(sm.pi_M_k1, eps);
    double e1 = powi(sm.pi_M_k1, eps) * Q;
    double le = eps * std::log(eps + 3.0);
    double e2 = in.eps == 0
                    ? 0.0
                    : le * powi(EpK, eps - 1.0) * (sm.E + sm.F) * Q;
    double e3 = in.eps == 0
                    ? 0.0
                    : le * powi(sm.pi_M, s) * powi(EpK, eps - 1.0) *
                          (sm.E + sm.F);
    double e4 = (in.eps == 0 || in.s == 0)
                    ? 0.0
                    : le * s * std::log(s + 3.0) * powi(EpK, eps - 1.0) *
                          powi(HpM, s - 1.0) *
                          (sm.pi_M_half + sm.G) * (sm.pi_M_half + sm.G);
    res.error_bound = e1 + e2 + e3 + e4;
    res.preconditions[0] = EpK >= 12.0 * eps * (sm.E + sm.F);
    res.preconditions[1] = HpM >= 12.0 * s * sm.H;
    res.preconditions[2] =
        EpK * HpM >= 6.0 * eps * s * (sm.pi_M_half + sm.G) *
                         (sm.pi_M_half + sm.G);
    return res;
}

}  // namespace heckespan::bounds
