"""Hypergeometric polynomials.

Two normalizations:

* ``std``: pFq(-n, a; b; x) in "standard" normalization, multiplied through
  by (b)_n so every parameter value (including b in -Z_n) gives a
  polynomial.  In the elementary-symmetric coordinates
  e_k = (-1)^n C(n, k) (a)_{n-k} (b+n-k)_k.
* ``monic``: H_n[b; a] with e_k = C(n, k) <b n>_k / <a n>_k.

``a`` holds the upstairs parameters after the leading -n, ``b`` the
downstairs ones.  Products over parameter tuples are taken componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .poly import Poly, as_fraction, from_coeffs, substitute_affine, dilate


class DegenerateParameters(ValueError):
    """Parameters for which the requested object is undefined."""


def rising(a, k: int) -> Fraction:
    """Pochhammer (a)_k = a (a+1) ... (a+k-1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    a = as_fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def falling(a, k: int) -> Fraction:
    """<a>_k = a (a-1) ... (a-k+1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    a = as_fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= a - i
    return out


def rising_tuple(params, k: int) -> Fraction:
    out = Fraction(1)
    for a in params:
        out *= rising(a, k)
    return out


def in_neg_zn(x, n: int) -> bool:
    """x in {0, -1, ..., -n+1}."""
    x = as_fraction(x)
    return x.denominator == 1 and -n < x <= 0


class Normalization(str, Enum):
    STD = "std"
    MONIC = "monic"


def _tup(xs) -> tuple:
    if xs is None:
        return ()
    if isinstance(xs, (int, str, Fraction)):
        xs = [xs]
    return tuple(as_fraction(x) for x in xs)


@dataclass(frozen=True)
class HypergeomSpec:
    n: int
    a: tuple = field(default=())
    b: tuple = field(default=())
    norm: Normalization = Normalization.STD

    def __post_init__(self):
        object.__setattr__(self, "a", _tup(self.a))
        object.__setattr__(self, "b", _tup(self.b))
        object.__setattr__(self, "norm", Normalization(self.norm))
        if self.n < 0:
            raise ValueError("n must be non-negative")

    @property
    def shape(self) -> tuple[int, int]:
        """(i, j) = (number of upstairs params besides -n, number downstairs)."""
        return len(self.a), len(self.b)

    def full_degree(self) -> bool:
        """Standard normalization has exact degree n iff no a_s in -Z_n."""
        return not any(in_neg_zn(a, self.n) for a in self.a)

    def build(self) -> Poly:
        if self.norm is Normalization.STD:
            return pfq_std(self.n, self.a, self.b)
        return hgp_monic(self.n, self.b, self.a)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": [f"{x.numerator}/{x.denominator}" for x in self.a],
            "b": [f"{x.numerator}/{x.denominator}" for x in self.b],
            "norm": self.norm.value,
        }


def pfq_std(n: int, a: Sequence = (), b: Sequence = ()) -> Poly:
    """pFq(-n, a; b; x) in standard normalization."""
    a, b = _tup(a), _tup(b)
    sign = (-1) ** n
    # (a)_{n-k} for k = n..0 built upward, (b+n-k)_k = <b+n-1>_k built upward
    ra = [Fraction(1)] * (n + 1)
    for m in range(1, n + 1):
        step = Fraction(1)
        for x in a:
            step *= x + m - 1
        ra[m] = ra[m - 1] * step
    fb = [Fraction(1)] * (n + 1)
    for k in range(1, n + 1):
        step = Fraction(1)
        for y in b:
            step *= y + n - k
        fb[k] = fb[k - 1] * step
    return Poly(n, tuple(sign * comb(n, k) * ra[n - k] * fb[k] for k in range(n + 1)))


def pfq_std_series(n: int, a: Sequence = (), b: Sequence = ()) -> Poly:
    """Same polynomial from sum_k (-n)_k (a)_k (b+k)_{n-k} x^k / k!.

    Independent of ``pfq_std``; used as a cross-check.
    """
    a, b = _tup(a), _tup(b)
    coeffs = []
    for k in range(n + 1):
        c = rising(-n, k) * rising_tuple(a, k) / factorial(k)
        for y in b:
            c *= rising(y + k, n - k)
        coeffs.append(c)
    return from_coeffs(coeffs, n)


def hgp_monic(n: int, b: Sequence = (), a: Sequence = ()) -> Poly:
    """H_n[b; a]: e_k = C(n,k) <b n>_k / <a n>_k (numerator params first)."""
    b, a = _tup(b), _tup(a)
    e = [Fraction(1)]
    num = Fraction(1)
    for k in range(1, n + 1):
        step = Fraction(1)
        for y in b:
            step *= y * n - (k - 1)
        for x in a:
            d = x * n - (k - 1)
            if d == 0:
                raise DegenerateParameters(f"<{x}*{n}>_{k} vanishes")
            step /= d
        num *= step
        e.append(comb(n, k) * num)
    return Poly(n, tuple(e))


def hgp_via_std(n: int, b: Sequence = (), a: Sequence = ()) -> Poly:
    """H_n[b; a] through the standard normalization:
    (-1)^n / <a n>_n * pFq(-n, a n - n + 1; b n - n + 1; x)."""
    b, a = _tup(b), _tup(a)
    den = Fraction(1)
    for x in a:
        den *= falling(x * n, n)
    if den == 0:
        raise DegenerateParameters("<a n>_n vanishes")
    p = pfq_std(n, [x * n - n + 1 for x in a], [y * n - n + 1 for y in b])
    return p.scale(Fraction((-1) ** n) / den)


def laguerre_hat(n: int, b) -> Poly:
    """Dil_{1/n} H_n[b; -]."""
    return dilate(hgp_monic(n, [b], []), Fraction(1, n))


def bessel_hat(n: int, a) -> Poly:
    """Dil_n H_n[-; a]."""
    return dilate(hgp_monic(n, [], [a]), n)


def jacobi_hat(n: int, b, a) -> Poly:
    """H_n[b; a] (no rescaling)."""
    return hgp_monic(n, [b], [a])


# classical families in their traditional normalizations


def laguerre(n: int, alpha) -> Poly:
    """L_n^(alpha)(x) = sum_k <n+alpha>_{n-k} / (k! (n-k)!) (-x)^k."""
    alpha = as_fraction(alpha)
    c = [falling(n + alpha, n - k) * (-1) ** k / (factorial(k) * factorial(n - k)) for k in range(n + 1)]
    return from_coeffs(c, n)


def bessel(n: int, alpha) -> Poly:
    """Reversed Laguerre x^n L_n^(alpha)(-1/x)."""
    lc = laguerre(n, alpha).coeffs()
    # x^n sum_k c_k (-1/x)^k = sum_k c_k (-1)^k x^(n-k)
    out = [Fraction(0)] * (n + 1)
    for k, c in enumerate(lc):
        out[n - k] = c * (-1) ** k
    return from_coeffs(out, n)


def jacobi(n: int, alpha, beta) -> Poly:
    """P_n^(alpha,beta)(x) = 1/n! sum_k C(n,k) (n+alpha+beta+1)_k (alpha+k+1)_{n-k} ((x-1)/2)^k."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    # build in the variable y = (x-1)/2, then substitute
    cy = [
        comb(n, k) * rising(n + alpha + beta + 1, k) * rising(alpha + k + 1, n - k) / factorial(n)
        for k in range(n + 1)
    ]
    return substitute_affine(from_coeffs(cy, n), Fraction(1, 2), Fraction(-1, 2))
