#pragma once

#include <cstdint>
#include <vector>

#include "heckespan/cyclotomic.hpp"
#include "heckespan/dirichlet.hpp"
#include "heckespan/qexp.hpp"

namespace heckespan::nf {
class CuspSource;  // newforms.hpp
}

namespace heckespan::modforms {

using chars::DirichletCharacter;

// --------------------------------------------------------------------
// Bernoulli numbers and generalized Bernoulli numbers
// --------------------------------------------------------------------

// B_k with B_1 = -1/2 (memoized)
const Rat& bernoulli_number(unsigned k);

// B_{k,phi} over residues mod the modulus of phi (callers pass primitive
// characters).  Exact cyclotomic; rational for real characters.
cyclo::Cyclotomic generalized_bernoulli_cyc(const DirichletCharacter& phi,
                                            unsigned k);
// real-character fast path
Rat generalized_bernoulli(const DirichletCharacter& phi, unsigned k);

// --------------------------------------------------------------------
// Eisenstein newforms
// --------------------------------------------------------------------

struct EisensteinParams {
    DirichletCharacter psi;
    DirichletCharacter phi;
    unsigned k = 4;
};

// sigma_{k-1}^{psi,phi}(n) = sum_{ab=n} psi(a) phi(b) b^{k-1}
cyclo::Cyclotomic eisenstein_sigma_cyc(const DirichletCharacter& psi,
                                       const DirichletCharacter& phi,
                                       unsigned k, uint64_t n);
// rational path; requires both characters real-valued
Rat eisenstein_sigma(const DirichletCharacter& psi,
                     const DirichletCharacter& phi, unsigned k, uint64_t n);

// E_k^{psi,phi} with constant term delta_{psi,1_1} L(phi,1-k)/2.
// Requires k >= 4 even and real-valued characters for rational output.
QExpansion eisenstein_newform(const EisensteinParams& params, unsigned prec);

// --------------------------------------------------------------------
// level-one Miller basis
// --------------------------------------------------------------------

// Basis f_0..f_{d-1} of M_k(Gamma0(1)) with a_i(f_j) = delta_{ij},
// 0 <= i,j < d.  Integral coefficients.  Requires prec >= d-1.
std::vector<QExpansion> miller_basis(unsigned k, unsigned prec);

// --------------------------------------------------------------------
// dimension formulas (N squarefree, k >= 4 even)
// --------------------------------------------------------------------

uint64_t gamma0_index(uint64_t N);
unsigned elliptic_nu2(uint64_t N);
unsigned elliptic_nu3(uint64_t N);
unsigned cusp_count(uint64_t N);
unsigned gamma0_genus(uint64_t N);

int dim_modular(unsigned k, uint64_t N);
int dim_cusp(unsigned k, uint64_t N);
int dim_eis(unsigned k, uint64_t N);
int dim_cusp_new(unsigned k, uint64_t N);
int dim_eis_new(unsigned k, uint64_t N);

// --------------------------------------------------------------------
// assembled basis of M_k(Gamma0(N))
// --------------------------------------------------------------------

// All degeneracy lifts of Eisenstein and cusp newforms across divisors.
// Count equals dim_cusp + dim_eis; cusp orbits of dimension r contribute
// their r rational trace forms.  Throws data_unavailable naming (d,k).
std::vector<QExpansion> full_space_basis(unsigned k, uint64_t N,
                                         unsigned prec,
                                         const nf::CuspSource& cusp_source);

}  // namespace heckespan::modforms
