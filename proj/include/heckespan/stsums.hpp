#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "heckespan/arith.hpp"
#include "heckespan/dirichlet.hpp"
#include "heckespan/newforms.hpp"

namespace heckespan::stsums {

using cplx = std::complex<double>;

enum class PhiVariant { Sym2, Tensor, Char, Twist };

// member of the L-function list: Sym^2 f, f (x) g, chi, or f (x) chi
struct PhiSpec {
    PhiVariant variant;
    nf::NewformRecord f;
    nf::NewformRecord g;
    chars::DirichletCharacter chi{1};
    unsigned weight = 0;
    double shift = 0.0;  // ell >= 0

    static PhiSpec sym2(nf::NewformRecord f, double ell = 0.0);
    static PhiSpec tensor(nf::NewformRecord f, nf::NewformRecord g,
                          double ell = 0.0);
    static PhiSpec character(chars::DirichletCharacter chi, double ell = 0.0);
    static PhiSpec twist(nf::NewformRecord f, chars::DirichletCharacter chi,
                         double ell = 0.0);

    // product of constituent levels/conductors; bad primes divide this
    uint64_t bad_level() const;
    unsigned mu() const;  // 3, 4, 1, 2
    std::string describe() const;
};

struct SumSeries {
    double cutoff = 0.0;
    double value = 0.0;     // real part
    double value_im = 0.0;
    uint64_t term_count = 0;
    double max_abs_partial = 0.0;
    cplx cvalue() const { return {value, value_im}; }
};

// alpha, conj(alpha) on the unit circle with alpha + conj = a_hat
std::pair<cplx, cplx> satake_params(double a_hat);

// normalized prime coefficient of phi at a good prime
cplx phi_prime_coeff(const PhiSpec& phi, uint64_t p);

SumSeries psi_phi(const PhiSpec& phi, double X, const arith::PrimeTable& pt);
SumSeries theta_phi(const PhiSpec& phi, double X, const arith::PrimeTable& pt);
SumSeries S_phi(const PhiSpec& phi, double X, const arith::PrimeTable& pt);

// primed sums over p <= X, p coprime to M
double E_sum(uint64_t M, unsigned k, double X, const arith::PrimeTable& pt);

struct MaxSum {
    double value = 0.0;
    bool empty = false;  // empty index set; value 0
    std::string argmax;
};

MaxSum F_sum(uint64_t M, unsigned k, double X, const arith::PrimeTable& pt);
MaxSum G_sum(uint64_t M, unsigned k, double X,
             const nf::CuspSource& cusp_source, const arith::PrimeTable& pt);

struct HResult {
    double literal = 0.0;     // U_2(a_hat) = 4 a_hat^2 - 1
    double normalized = 0.0;  // U_2(a_hat/2) = a_hat^2 - 1
    bool empty = false;
    std::string argmax;
};

HResult H_sum(uint64_t M, unsigned k, double X,
              const nf::CuspSource& cusp_source, const arith::PrimeTable& pt);

struct STReport {
    uint64_t M = 1;
    unsigned k = 0;
    double X = 0.0;
    double E = 0.0;
    MaxSum F, G;
    HResult H;
    double alpha = 0.0;
    double bound_FG = 0.0;  // alpha X^{k/2} log X
    double bound_H = 0.0;   // alpha X^{1/2} log X
    double ratio_F = 0.0, ratio_G = 0.0;
    double ratio_H_literal = 0.0, ratio_H_normalized = 0.0;
    bool pass = false;
};

// F, G, H against the conditional bounds; requires X >= 17.33
STReport check_effectiveST(uint64_t M, unsigned k, double X,
                           const nf::CuspSource& cusp_source,
                           const arith::PrimeTable& pt);

}  // namespace heckespan::stsums
