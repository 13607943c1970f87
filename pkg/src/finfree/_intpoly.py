"""Dense integer polynomials (ascending coefficient lists) for root work.

Everything here is exact.  Polynomials are kept primitive with a positive
leading coefficient whenever that does not change the root set.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def trim(f):
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def deg(f) -> int:
    f = trim(f)
    if len(f) == 1 and f[0] == 0:
        return -1
    return len(f) - 1


def content(f) -> int:
    g = 0
    for c in f:
        g = gcd(g, c)
    return g


def primitive(f):
    """Divide by the content and make the leading coefficient positive."""
    f = trim(f)
    g = content(f)
    if g == 0:
        return [0]
    if f[-1] < 0:
        g = -g
    return [c // g for c in f]


def from_rationals(coeffs):
    """Clear denominators of ascending rational coefficients."""
    coeffs = [Fraction(c) for c in coeffs]
    m = 1
    for c in coeffs:
        m = lcm(m, c.denominator)
    return primitive([int(c * m) for c in coeffs])


def deriv(f):
    return trim([i * f[i] for i in range(1, len(f))] or [0])


def prem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) a mod b, plus that exponent."""
    a, b = trim(a), trim(b)
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return a, 0
    lb = b[-1]
    r = list(a)
    e = da - db + 1
    for k in range(da - db, -1, -1):
        c = r[db + k]
        r = [x * lb for x in r]
        if c:
            for i in range(db + 1):
                r[i + k] -= c * b[i]
        e -= 1
        r.pop()  # leading term cancelled
    # each step multiplied by lb once: total lb^(da-db+1)
    return trim(r or [0]), da - db + 1


def rem_sign_true(a, b):
    """A positive multiple of the true remainder a mod b, primitive."""
    r, e = prem(a, b)
    if deg(r) < 0:
        return [0]
    g = content(r)
    if b[-1] < 0 and e % 2 == 1:
        g = -g
    return [c // g for c in r]


def gcd_poly(a, b):
    a, b = primitive(a), primitive(b)
    if deg(a) < deg(b):
        a, b = b, a
    while deg(b) >= 0:
        r, _ = prem(a, b)
        a, b = b, primitive(r) if deg(r) >= 0 else [0]
    return primitive(a)


def divexact(a, b):
    """a / b, asserting exact divisibility and an integral quotient."""
    a, b = [Fraction(x) for x in trim(a)], trim(b)
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        if any(a):
            raise ArithmeticError("not divisible")
        return [0]
    q = [Fraction(0)] * (da - db + 1)
    for k in range(da - db, -1, -1):
        c = a[db + k] / b[-1]
        q[k] = c
        if c:
            for i in range(db + 1):
                a[i + k] -= c * b[i]
    if any(a[:db]):
        raise ArithmeticError("not divisible")
    if any(c.denominator != 1 for c in q):
        raise ArithmeticError("non-integral quotient")
    return trim([int(c) for c in q])


def mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def squarefree_factors(f):
    """Yun's algorithm: [(g_i, i)] with f ~ prod g_i^i, g_i squarefree, coprime."""
    f = primitive(f)
    if deg(f) <= 0:
        return []
    out = []
    df = deriv(f)
    b = gcd_poly(f, df)
    c = divexact(f, b)
    d = [x - y for x, y in _pad(divexact(df, b), deriv(c))]
    i = 1
    while deg(c) > 0:
        a = gcd_poly(c, d)
        if deg(a) > 0:
            out.append((a, i))
        c = divexact(c, a)
        d = [x - y for x, y in _pad(divexact(d, a), deriv(c))]
        i += 1
    return out


def _pad(a, b):
    m = max(len(a), len(b))
    return zip(list(a) + [0] * (m - len(a)), list(b) + [0] * (m - len(b)))


def squarefree_part(f):
    f = primitive(f)
    return primitive(divexact(f, gcd_poly(f, deriv(f))))


def eval_hom(f, u: int, v: int) -> int:
    """v^d f(u/v) for v > 0: same sign as f(u/v)."""
    d = len(f) - 1
    if v & (v - 1) == 0:
        # dyadic point: powers of v are shifts
        s = v.bit_length() - 1
        acc = f[d]
        sh = 0
        for i in range(d - 1, -1, -1):
            sh += s
            acc = acc * u + (f[i] << sh)
        return acc
    acc = f[d]
    vp = 1
    for i in range(d - 1, -1, -1):
        vp *= v
        acc = acc * u + f[i] * vp
    return acc


def sign_at(f, x: Fraction) -> int:
    x = Fraction(x)
    s = eval_hom(f, x.numerator, x.denominator)
    return (s > 0) - (s < 0)


def sturm_chain(f):
    f = primitive(f)
    chain = [f, primitive(deriv(f))]
    while deg(chain[-1]) > 0:
        r = rem_sign_true(chain[-2], chain[-1])
        if deg(r) < 0:
            break
        chain.append([-c for c in r])
    return chain


def variations(signs) -> int:
    v, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def cauchy_bound(f) -> Fraction:
    """A power of two strictly exceeding every |root|."""
    f = trim(f)
    lc = abs(f[-1])
    m = max((Fraction(abs(c), lc) for c in f[:-1]), default=Fraction(0))
    bound = 1 + m
    p = 1
    while p <= bound:
        p *= 2
    return Fraction(p)


def fujiwara_bound(f) -> Fraction:
    """A power of two exceeding every |root|, usually far tighter than Cauchy's.

    Uses 2 max_k |a_{d-k}/a_d|^(1/k) computed through base-2 logs, with an
    extra factor 2 against rounding.
    """
    import math

    f = trim(f)
    d = len(f) - 1
    lc = math.log2(abs(f[-1]))
    best = -math.inf
    for k in range(1, d + 1):
        c = f[d - k]
        if c:
            v = math.log2(abs(c)) - lc
            if k == d:
                v -= 1
            best = max(best, v / k)
    if best == -math.inf:
        return Fraction(1)
    e = math.ceil(best) + 2
    return Fraction(2) ** e if e >= 0 else Fraction(1, 2 ** -e)
