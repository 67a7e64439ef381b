"""Exact q-expansion arithmetic used by the fixture generator.

Series are plain lists of Fraction, index = exponent of q.  Dense products
go through Kronecker substitution (pack coefficients into one big int) so
that CPython's integer multiplication does the heavy lifting.
"""

from fractions import Fraction
from math import isqrt, gcd


def trim(v, length):
    if len(v) < length:
        return v + [Fraction(0)] * (length - len(v))
    return v[:length]


def ser_add(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def ser_scale(a, c):
    c = Fraction(c)
    return [c * x for x in a]


def _common_denominator(a):
    d = 1
    for x in a:
        d = d * x.denominator // gcd(d, x.denominator)
    return d


def _pack(ints, slot_bits):
    # Coefficients must be nonnegative and < 2**slot_bits.
    acc = 0
    for c in reversed(ints):
        acc = (acc << slot_bits) | c
    return acc


def _unpack(acc, slot_bits, n):
    mask = (1 << slot_bits) - 1
    out = []
    for _ in range(n):
        out.append(acc & mask)
        acc >>= slot_bits
    return out


def ser_mul(a, b, length):
    """Truncated product of two Fraction series via Kronecker substitution.

    Negative coefficients are handled by shifting both factors to be
    nonnegative and correcting with prefix sums afterwards.
    """
    a = trim(list(a), length)
    b = trim(list(b), length)
    da = _common_denominator(a)
    db = _common_denominator(b)
    ia = [int(x * da) for x in a]
    ib = [int(x * db) for x in b]
    offa = -min(min(ia), 0)
    offb = -min(min(ib), 0)
    ma = max(ia) + offa
    mb = max(ib) + offb
    if ma == 0 or mb == 0:
        return [Fraction(0)] * length
    bound = ma * mb * length
    slot = bound.bit_length() + 1
    pa = _pack([c + offa for c in ia], slot)
    pb = _pack([c + offb for c in ib], slot)
    raw = _unpack(pa * pb, slot, length)
    # (a+oa)*(b+ob) at n  =  (a*b)_n + oa*sum_{j<=n} b_j + ob*sum_{i<=n} a_i
    #                        + oa*ob*(n+1)
    pref_a = 0
    pref_b = 0
    den = Fraction(1, da * db)
    out = [Fraction(0)] * length
    for n in range(length):
        pref_a += ia[n]
        pref_b += ib[n]
        val = raw[n] - offa * pref_b - offb * pref_a - offa * offb * (n + 1)
        out[n] = val * den
    return out


def ser_pow(a, e, length):
    out = [Fraction(1)] + [Fraction(0)] * (length - 1)
    base = a[:length]
    while e > 0:
        if e & 1:
            out = ser_mul(out, base, length)
        e >>= 1
        if e:
            base = ser_mul(base, base, length)
    return out


def sigma_series(power, length):
    """[0, sigma_power(1), sigma_power(2), ...] via divisor sieve."""
    out = [Fraction(0)] * length
    for d in range(1, length):
        dp = Fraction(d) ** power
        for m in range(d, length, d):
            out[m] += dp
    return out


def eta_quotient(exponents, length):
    """prod_d eta(d z)^{r_d} as a q-series (q-power at infinity included).

    exponents: dict d -> r_d.  Requires sum d*r_d = 0 mod 24.
    """
    shift = sum(d * r for d, r in exponents.items())
    assert shift % 24 == 0, "eta quotient must have integral q-power"
    shift //= 24
    # prod (1-q^(dn))^{r_d}; expand via eta power series per d.
    series = [Fraction(1)] + [Fraction(0)] * (length - 1)
    for d, r in exponents.items():
        f = _euler_product_power(d, r, length)
        series = ser_mul(series, f, length)
    if shift == 0:
        return series
    out = [Fraction(0)] * length
    for n, c in enumerate(series):
        if 0 <= n + shift < length:
            out[n + shift] = c
    return out


_euler_cache = {}


def _euler_product_power(d, r, length):
    """prod_n (1-q^(dn))^r truncated to `length` terms."""
    key = (d, r, length)
    if key in _euler_cache:
        return _euler_cache[key]
    if r >= 0:
        base = _euler_power_pos(r, (length + d - 1) // d + 1)
    else:
        pos = _euler_power_pos(-r, (length + d - 1) // d + 1)
        base = _series_inverse(pos, (length + d - 1) // d + 1)
    out = [Fraction(0)] * length
    for n, c in enumerate(base):
        if n * d < length:
            out[n * d] = c
    _euler_cache[key] = out
    return out


_euler_pow_cache = {}


def _euler_power_pos(r, length):
    key = (r, length)
    if key in _euler_pow_cache:
        return _euler_pow_cache[key]
    # eulerfunc = prod (1-q^n) via pentagonal numbers (sparse).
    f = [Fraction(0)] * length
    f[0] = Fraction(1)
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 >= length and g2 >= length:
            break
        s = Fraction(-1) ** j
        if g1 < length:
            f[g1] += s
        if g2 < length:
            f[g2] += s
        j += 1
    out = ser_pow(f, r, length)
    _euler_pow_cache[key] = out
    return out


def _series_inverse(a, length):
    assert a[0] != 0
    inv0 = Fraction(1) / a[0]
    out = [Fraction(0)] * length
    out[0] = inv0
    # Newton iteration doubles correct terms each round.
    prec = 1
    while prec < length:
        prec = min(2 * prec, length)
        t = ser_mul(a[:prec], out[:prec], prec)
        t[0] -= 2
        t = [-x for x in t]
        out = ser_mul(out[:prec], t, prec)
    return trim(out, length)
