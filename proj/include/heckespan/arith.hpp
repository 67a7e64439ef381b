#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "heckespan/errors.hpp"

namespace heckespan::arith {

using Int = mpz_class;
using Rat = mpq_class;

// --------------------------------------------------------------------
// primes
// --------------------------------------------------------------------

struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint64_t> primes;

    bool contains(uint64_t p) const;
    // number of primes <= x (x <= limit)
    std::size_t count_below(uint64_t x) const;
};

// All primes <= limit, ascending.  Segmented above 10^7 so memory stays
// proportional to sqrt(limit) + output.  Throws capacity_error above
// kSieveCapacity.
inline constexpr uint64_t kSieveCapacity = 400'000'000;
PrimeTable sieve_primes(uint64_t limit);

// sum over primes p <= X, p not dividing M, of p^ell (double path).
// Deterministic ascending order with compensated accumulation.
double prime_power_sum(uint64_t M, double ell, double X, const PrimeTable& pt);

// exact variant, integer ell >= 0
Int prime_power_sum_exact(uint64_t M, unsigned ell, uint64_t X,
                          const PrimeTable& pt);

// --------------------------------------------------------------------
// elementary multiplicative helpers
// --------------------------------------------------------------------

std::vector<uint64_t> divisors(uint64_t n);
std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t n);
unsigned omega(uint64_t n);
int moebius(uint64_t n);
bool is_squarefree(uint64_t n);
uint64_t gcd_u64(uint64_t a, uint64_t b);

// a^e as exact integer
Int ipow(uint64_t a, unsigned e);
Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);

}  // namespace heckespan::arith
