#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heckespan/arith.hpp"
#include "heckespan/dirichlet.hpp"
#include "heckespan/newforms.hpp"

namespace heckespan::detsum {

using arith::Int;
using arith::Rat;

// --------------------------------------------------------------------
// block matrix specification (E | S)
// --------------------------------------------------------------------

struct EisColumnSpec {
    chars::DirichletCharacter psi{1};
    chars::DirichletCharacter phi{1};
};

struct CuspColumnSpec {
    nf::NewformRecord rec;  // embedded a_hat values
    // exact integral a_p where the eigenvalue field is rational
    bool has_exact() const { return !rec.ap_exact.empty(); }
};

struct BlockMatrixSpec {
    std::vector<EisColumnSpec> eis;
    std::vector<CuspColumnSpec> cusp;
    unsigned k = 4;
    uint64_t M = 1;

    unsigned m() const { return eis.size() + cusp.size(); }
    bool all_real() const;
    bool all_exact() const;  // rational fast path available
};

// entries: E columns psi_j(p_i) p_i^{(1-k)/2} + phi_j(p_i) p_i^{(k-1)/2},
// S columns a_hat_{p_i}(f_j); primes must be distinct and coprime to M
std::vector<std::vector<std::complex<double>>> es_matrix(
    const BlockMatrixSpec& spec, const std::vector<uint64_t>& primes);

// row-scaled exact form: row for p is multiplied by p^{(k-1)/2}, entries
// then rational (real characters and exact eigenvalues required)
std::vector<std::vector<Rat>> es_matrix_scaled_exact(
    const BlockMatrixSpec& spec, const std::vector<uint64_t>& primes);

// --------------------------------------------------------------------
// rencontres combinatorics
// --------------------------------------------------------------------

Int derangements(unsigned n);
// F(l, gamma) = C(l, gamma) D_{l-gamma}
Int rencontres(unsigned l, unsigned gamma);

// #{(rho1, rho2)} with |D_i| = d, |D1 cap D2| = l, Eq(rho1,rho2) = gamma:
// exhaustive count (d <= 7)
Int count_eq_pairs(unsigned d, unsigned l, unsigned gamma);
// the displayed formula d!(d-l)!F(l,gamma)
Int formula_eq_pairs(unsigned d, unsigned l, unsigned gamma);

struct PairCountRow {
    unsigned d, l, gamma;
    Int brute, formula;
    bool agree;
};
std::vector<PairCountRow> eq_pairs_comparison(unsigned d_max);

// --------------------------------------------------------------------
// the two summation estimates from the determinant proposition's proof
// --------------------------------------------------------------------

struct EstimateRow {
    std::string which;   // "first_literal" | "first_inferred" | "second"
    unsigned l = 0, m = 0, k = 0;
    double T = 0.0, B = 0.0;
    double lhs = 0.0, rhs = 0.0;
    bool applicable = true;
    bool ok = true;
};

// first estimate, literally as printed: l! sum_{g<=l} T^l/g! <= log(l+2) T^l
EstimateRow first_estimate_literal(unsigned l, double T);
// usage-inferred form: sum_{g<l} F(l,g) A^g B^{l-g} <= l log(l+2) A^{l-1} B
// under A >= 12 l B
EstimateRow first_estimate_inferred(unsigned l, double A, double B);
// second: m!(m+k)! sum_{l<=m} T^l/(l!(k+l)!) <= log(m+2)log(m+k+2) T^m
// for T >= 6m(m+k); LHS exact rational
EstimateRow second_estimate(unsigned m, unsigned k, uint64_t T);

std::vector<EstimateRow> combinatorial_estimate_check(unsigned l_max,
                                                      unsigned m_max,
                                                      unsigned k_max,
                                                      uint64_t T_max);

// --------------------------------------------------------------------
// determinant-square sums
// --------------------------------------------------------------------

struct DetSumOptions {
    bool distinct_primes = false;  // default: unrestricted multi-index
    unsigned workers = 1;
};

struct DetSumResult {
    double raw = 0.0;         // sum over ordered m-tuples of |det|^2
    double normalized = 0.0;  // 4^s (m!)^{-1} * raw
    std::optional<Rat> exact_raw;
    uint64_t tuples = 0;
};

// guards: m <= 4 and pi_M(X) <= 60
DetSumResult det_square_sum(const BlockMatrixSpec& spec, double X,
                            const DetSumOptions& opts = {});

// same sum computed through the proof's pairwise Laplace expansion over
// (alpha_1, alpha_2, sigma_i, tau_i); exact rational (requires exact spec)
Rat det_square_sum_pair_expansion(const BlockMatrixSpec& spec, double X);
Rat det_square_sum_exact_direct(const BlockMatrixSpec& spec, double X);

// Laplace generalized row expansion check on a rational test matrix
bool laplace_expansion_check(const std::vector<std::vector<Rat>>& mat,
                             unsigned eps);

}  // namespace heckespan::detsum
