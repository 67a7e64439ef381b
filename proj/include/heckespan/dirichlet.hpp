#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "heckespan/arith.hpp"

namespace heckespan::chars {

// e^{2*pi*i*exp/order}, kept unreduced against a fixed ambient order.
struct RootOfUnity {
    unsigned order = 1;
    unsigned exp = 0;

    RootOfUnity normalized() const {
        unsigned g = std::gcd(exp, order);
        if (exp == 0) return {1, 0};
        return {order / g, exp / g};
    }
    std::complex<double> embed() const {
        double t = 2.0 * M_PI * (double)exp / (double)order;
        return {std::cos(t), std::sin(t)};
    }
    bool is_one() const { return exp % order == 0; }
    bool is_real() const { return (2 * exp) % order == 0; }
    // only valid when is_real()
    int real_sign() const { return exp % order == 0 ? 1 : -1; }
};

// Value of a character: zero on residues sharing a factor with q,
// otherwise an exact root of unity.
struct CharValue {
    bool zero = true;
    RootOfUnity root{};

    static CharValue make_zero() { return {}; }
    static CharValue make_root(RootOfUnity r) { return {false, r}; }
    std::complex<double> embed() const {
        return zero ? std::complex<double>{0.0, 0.0} : root.embed();
    }
};

class DirichletCharacter {
  public:
    // principal character mod q
    explicit DirichletCharacter(uint64_t q);
    DirichletCharacter(uint64_t q, std::vector<unsigned> exponents);

    uint64_t modulus() const { return q_; }
    unsigned order() const { return order_; }
    uint64_t conductor() const { return conductor_; }
    bool is_principal() const { return order_ == 1; }
    bool is_primitive() const { return conductor_ == q_; }
    bool is_real() const { return order_ <= 2; }
    bool is_even() const;  // chi(-1) = 1

    CharValue value(uint64_t a) const;
    std::complex<double> cvalue(uint64_t a) const { return value(a).embed(); }
    // exact value for real characters: -1, 0, or 1
    int real_value(uint64_t a) const;

    DirichletCharacter product(const DirichletCharacter& other) const;
    DirichletCharacter conjugate() const;

    // exponent of the value root of unity against order(); q coprime a only
    std::optional<unsigned> value_exponent(uint64_t a) const;

    bool operator==(const DirichletCharacter& o) const {
        return q_ == o.q_ && exps_ == o.exps_;
    }

  private:
    void init_group();
    void compute_order_and_conductor();

    uint64_t q_;
    // generator decomposition of (Z/q)^*: list of (generator, cyclic order)
    std::vector<std::pair<uint64_t, unsigned>> gens_;
    std::vector<unsigned> exps_;  // exponent per generator
    std::vector<std::vector<unsigned>> dlog_;  // per gen: residue -> dlog
    unsigned order_ = 1;
    uint64_t conductor_ = 1;
};

// exactly phi(q) characters, principal first; deterministic order
std::vector<DirichletCharacter> characters_mod(uint64_t q);

}  // namespace heckespan::chars
