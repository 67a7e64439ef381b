#include "heckespan/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace heckespan::arith {

bool PrimeTable::contains(uint64_t p) const {
    return std::binary_search(primes.begin(), primes.end(), p);
}

std::size_t PrimeTable::count_below(uint64_t x) const {
    return std::upper_bound(primes.begin(), primes.end(), x) - primes.begin();
}

namespace {

std::vector<uint64_t> simple_sieve(uint64_t limit) {
    std::vector<uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (!comp[i])
            for (uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    for (uint64_t i = 2; i <= limit; ++i)
        if (!comp[i]) out.push_back(i);
    return out;
}

}  // namespace

PrimeTable sieve_primes(uint64_t limit) {
    if (limit > kSieveCapacity)
        throw capacity_error("sieve limit " + std::to_string(limit) +
                             " exceeds capacity " +
                             std::to_string(kSieveCapacity));
    PrimeTable pt;
    pt.limit = limit;
    constexpr uint64_t kSegThreshold = 10'000'000;
    if (limit <= kSegThreshold) {
        pt.primes = simple_sieve(limit);
        return pt;
    }
    uint64_t root = static_cast<uint64_t>(std::sqrt((double)limit)) + 1;
    std::vector<uint64_t> base = simple_sieve(root);
    pt.primes = base;
    // trim base primes above root that slipped in
    while (!pt.primes.empty() && pt.primes.back() > root) pt.primes.pop_back();
    const uint64_t seg = 1u << 21;
    std::vector<bool> mark;
    for (uint64_t lo = pt.primes.empty() ? 2 : pt.primes.back() + 1;
         lo <= limit; lo += seg) {
        uint64_t hi = std::min(limit, lo + seg - 1);
        mark.assign(hi - lo + 1, false);
        for (uint64_t p : base) {
            if (p * p > hi) break;
            uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
            for (uint64_t j = start; j <= hi; j += p) mark[j - lo] = true;
        }
        for (uint64_t v = lo; v <= hi; ++v)
            if (!mark[v - lo]) pt.primes.push_back(v);
    }
    return pt;
}

double prime_power_sum(uint64_t M, double ell, double X,
                       const PrimeTable& pt) {
    if (X > (double)pt.limit + 0.5)
        throw capacity_error("prime_power_sum: X exceeds sieve limit");
    double sum = 0.0, comp = 0.0;  // Kahan
    for (uint64_t p : pt.primes) {
        if ((double)p > X) break;
        if (M % p == 0) continue;
        double term = std::pow((double)p, ell);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

Int prime_power_sum_exact(uint64_t M, unsigned ell, uint64_t X,
                          const PrimeTable& pt) {
    if (X > pt.limit)
        throw capacity_error("prime_power_sum_exact: X exceeds sieve limit");
    Int sum = 0;
    for (uint64_t p : pt.primes) {
        if (p > X) break;
        if (M % p == 0) continue;
        sum += ipow(p, ell);
    }
    return sum;
}

std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t n) {
    std::vector<std::pair<uint64_t, unsigned>> out;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<uint64_t> divisors(uint64_t n) {
    std::vector<uint64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = out.size();
        uint64_t pe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

unsigned omega(uint64_t n) { return factorize(n).size(); }

int moebius(uint64_t n) {
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

bool is_squarefree(uint64_t n) {
    for (auto [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

Int ipow(uint64_t a, unsigned e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), a, e);
    return r;
}

Int factorial(unsigned n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace heckespan::arith
