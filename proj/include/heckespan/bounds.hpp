#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "heckespan/arith.hpp"

namespace heckespan::bounds {

using arith::Int;

// alpha = 2605 + 87k + (248+6k) log M   (natural log; M real for tests)
double alpha_const(unsigned k, double M);

struct BoundInput {
    unsigned k = 4;
    uint64_t M = 1;
    int s = 0;    // sum of new cusp dimensions over divisors of M
    int eps = 1;  // sum of new Eisenstein dimensions over divisors of M
};

struct Condition {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

// the four admissibility conditions on X_M, certified by directed rounding
std::array<Condition, 4> thm_main_inequalities(const Int& X,
                                               const BoundInput& in);

struct BoundResult {
    double alpha = 0.0;
    Int X_M;
    std::array<Condition, 4> at_X;       // all ok
    std::array<Condition, 4> at_prev;    // at X_M - 1; at least one fails
    int binding = 0;                     // first failing condition at X_M - 1
};

// minimal integer X with all four conditions satisfied (certified, with
// failure certified at X-1)
BoundResult solve_X_M(const BoundInput& in);

// n = N * X with X solved from full-space dimensions s_N, eps_N
Int corollary_n(unsigned k, uint64_t N);

// ------------------------------------------------------------------
// explicit right-hand-side catalog
// ------------------------------------------------------------------

enum class Lemma {
    gammabound,     // 13.18 + 4 log(|s| + k + 2)
    Nbound,         // 33.5 + 4.34 log M + 8.67 log(|T| + k + 4)
    Nstar,          // 25.77 + 3.34 log M + 6.67 log(j + k + 4.5)
    verticalstrip,  // 103.48 + 10.87 log M + 29.74 log(|T| + k + 5)
    leftward,       // 40.23 + 4 log M + 8 log(|sigma| + |T| + k + 3)
    partialperron,  // full truncated-Perron bound (X, k, M)
    nontruncated,   // full non-truncated Perron bound (X, k, M, ell)
    thetabound,     // full theta bound (X, k, M, ell)
    Sbound,         // 2595 + 87k + (248+6k) log M
    vonMangoldt,    // 4 |zeta'(sigma)| / zeta(sigma)
};

struct LemmaParams {
    unsigned k = 4;
    double M = 1.0;
    double T = 1.0;
    double j = 0.0;
    double X = 17.33;
    double ell = 0.0;
    double sigma = 2.0;
    std::complex<double> s{2.0, 0.0};
};

double lemma_rhs(Lemma which, const LemmaParams& p);

// ------------------------------------------------------------------
// digamma machinery for the gamma-factor bound
// ------------------------------------------------------------------

std::complex<double> digamma(std::complex<double> z);

enum class GammaVariant { Sym2, Tensor, Char, Twist };

// d log Gamma(phi, s); delta_chi only meaningful for Char
std::complex<double> gamma_factor_logderiv(GammaVariant v,
                                           std::complex<double> s,
                                           unsigned k, int delta_chi = 0);

// |d log Gamma(phi,s)| <= 13.18 + 4 log(|s|+k+2), Im(s) >= 1
bool digamma_check(GammaVariant v, std::complex<double> s, unsigned k,
                   int delta_chi = 0);

// zeta(sigma) and |zeta'(sigma)| for sigma > 1, truncated Dirichlet series
// with Euler-Maclaurin tail; total error below 1e-9 relative
double zeta_value(double sigma);
double zeta_prime_abs(double sigma);

// ------------------------------------------------------------------
// auxiliary prime-sum inequalities
// ------------------------------------------------------------------

struct AuxRow {
    std::string name;
    double param1 = 0.0, param2 = 0.0;
    double lhs = 0.0, rhs = 0.0;
    bool applicable = true;
    bool ok = true;
    double margin = 0.0;  // rhs / lhs when applicable
};

std::vector<AuxRow> auxbounds_check(const std::vector<double>& X_grid,
                                    const std::vector<unsigned>& k_grid,
                                    const std::vector<uint64_t>& M_grid,
                                    const arith::PrimeTable& pt);

// worst ratio pi(X) log X / (1.26 X) over integer 17 <= X <= limit
std::pair<double, bool> scan_pi_upper(uint64_t limit,
                                      const arith::PrimeTable& pt);
// worst ratio theta(Y)/ (1.01 Y) over 2 <= Y <= limit
std::pair<double, bool> scan_theta_upper(uint64_t limit,
                                         const arith::PrimeTable& pt);

// ------------------------------------------------------------------
// determinant-sum envelope
// ------------------------------------------------------------------

struct EnvelopeSums {
    double E = 0.0, F = 0.0, G = 0.0, H = 0.0;
    double pi_M = 0.0;        // pi_{M,0}(X)
    double pi_M_k1 = 0.0;     // pi_{M,k-1}(X)
    double pi_M_half = 0.0;   // pi_{M,(1-k)/2}(X)
};

struct EnvelopeResult {
    double main_term = 0.0;
    double error_bound = 0.0;
    std::array<bool, 3> preconditions{false, false, false};
};

EnvelopeResult prop_determinant_envelope(const BoundInput& in,
                                         const EnvelopeSums& sums);

}  // namespace heckespan::bounds
