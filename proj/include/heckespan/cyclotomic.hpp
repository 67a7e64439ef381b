#pragma once

#include <complex>
#include <vector>

#include "heckespan/arith.hpp"
#include "heckespan/dirichlet.hpp"

namespace heckespan::cyclo {

using arith::Rat;

// Element of Q(zeta_m), reduced modulo the m-th cyclotomic polynomial.
// Coefficients are rational, ascending in powers of zeta_m.
class Cyclotomic {
  public:
    explicit Cyclotomic(unsigned m = 1);
    Cyclotomic(unsigned m, const Rat& rational);

    static Cyclotomic root_power(unsigned m, unsigned exp);  // zeta_m^exp
    static Cyclotomic from_char_value(unsigned m,
                                      const chars::CharValue& v);

    unsigned order() const { return m_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator*(const Rat& r) const;
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic conjugate() const;  // zeta -> zeta^{-1}

    bool is_zero() const;
    bool is_rational() const;
    Rat to_rational() const;  // valid when is_rational()
    std::complex<double> embed() const;

    bool operator==(const Cyclotomic& o) const;

  private:
    unsigned m_;
    std::vector<Rat> c_;  // size = deg Phi_m
};

// m-th cyclotomic polynomial, ascending integer coefficients (cached).
const std::vector<arith::Int>& cyclotomic_poly(unsigned m);

}  // namespace heckespan::cyclo
