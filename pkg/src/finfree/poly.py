"""Exact polynomials in the elementary-symmetric representation.

A ``Poly`` of ambient degree ``n`` stores ``e_0, ..., e_n`` with

    p(x) = sum_j x**(n-j) * (-1)**j * e_j

so a monic polynomial has ``e_0 = 1`` and ``e_j`` equal to the j-th
elementary symmetric function of its roots.  ``e_0 = 0`` is allowed; the
polynomial then has actual degree below ``n`` but still lives in P_n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to Fraction.

    Floats are rejected on purpose: they would silently import rounding
    error into the exact layer.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Poly:
    n: int
    e: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError("ambient degree must be a non-negative int")
        e = tuple(as_fraction(c) for c in self.e)
        if len(e) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} coefficients, got {len(e)}")
        object.__setattr__(self, "e", e)

    # construction helpers

    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls(n, (0,) * (n + 1))

    @classmethod
    def monomial(cls, n: int, k: int | None = None) -> "Poly":
        """x**k inside P_n (default k = n)."""
        k = n if k is None else k
        return from_coeffs([0] * k + [1], n)

    # basic queries

    def coeffs(self) -> list[Fraction]:
        """Power-basis coefficients c_0..c_n (ascending), c_i of x**i."""
        n = self.n
        return [(-1) ** (n - i) * self.e[n - i] for i in range(n + 1)]

    @property
    def degree(self) -> int:
        """Actual degree; -1 for the zero polynomial."""
        for j, c in enumerate(self.e):
            if c:
                return self.n - j
        return -1

    def is_zero(self) -> bool:
        return not any(self.e)

    def is_monic(self) -> bool:
        return self.e[0] == 1

    def __call__(self, x):
        return evaluate(self, x)

    def __add__(self, other: "Poly") -> "Poly":
        _same_n(self, other)
        return Poly(self.n, tuple(a + b for a, b in zip(self.e, other.e)))

    def __sub__(self, other: "Poly") -> "Poly":
        _same_n(self, other)
        return Poly(self.n, tuple(a - b for a, b in zip(self.e, other.e)))

    def __neg__(self) -> "Poly":
        return self.scale(-1)

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        return Poly(self.n, tuple(c * a for a in self.e))

    def __mul__(self, other):
        """Ordinary product; ambient degrees add."""
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.coeffs(), other.coeffs()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return from_coeffs(out, self.n + other.n)

    __rmul__ = scale

    def normalized(self) -> "Poly":
        """Scale so the leading (actual-degree) coefficient is 1."""
        d = self.degree
        if d < 0:
            return self
        return self.scale(1 / self.coeffs()[d])

    def to_json(self) -> dict:
        return {"n": self.n, "e": [fraction_str(c) for c in self.e]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj) -> "Poly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "n" not in obj or "e" not in obj:
            raise ValueError("poly JSON must be an object with 'n' and 'e'")
        return cls(int(obj["n"]), tuple(as_fraction(str(c)) for c in obj["e"]))

    def __repr__(self):
        body = ", ".join(str(c) for c in self.e)
        return f"Poly(n={self.n}, e=[{body}])"


def _same_n(p: Poly, q: Poly):
    if p.n != q.n:
        raise ValueError(f"ambient degree mismatch: {p.n} vs {q.n}")


def from_coeffs(coeffs: Sequence, n: int | None = None) -> Poly:
    """Build from ascending power-basis coefficients."""
    c = [as_fraction(x) for x in coeffs]
    if n is None:
        n = len(c) - 1
        while n > 0 and c[n] == 0:
            n -= 1
    if any(c[i] for i in range(n + 1, len(c))):
        raise ValueError("coefficients exceed the ambient degree")
    c = c + [Fraction(0)] * (n + 1 - len(c))
    return Poly(n, tuple((-1) ** j * c[n - j] for j in range(n + 1)))


def from_roots(roots: Iterable, leading=1, n: int | None = None) -> Poly:
    """leading * prod (x - r); repeated entries give multiplicities."""
    rs = [as_fraction(r) for r in roots]
    lead = as_fraction(leading)
    if lead == 0:
        raise ValueError("leading coefficient must be nonzero")
    if n is not None and n != len(rs):
        raise ValueError(f"expected {n} roots, got {len(rs)}")
    e = [lead]
    for r in rs:
        # multiply by (x - r): e_j <- e_j + r e_{j-1}
        e = [a + r * b for a, b in zip(e + [Fraction(0)], [Fraction(0)] + e)]
    return Poly(len(rs), tuple(e))


def lift(p: Poly, m: int) -> Poly:
    """View p in P_m for m >= p.n (same function, more leading zeros)."""
    if m < p.n:
        if p.degree > m:
            raise ValueError("degree too large for target ambient space")
        return from_coeffs(p.coeffs()[: m + 1], m)
    d = m - p.n
    return Poly(m, (0,) * d + tuple((-1) ** d * c for c in p.e))


def evaluate(p: Poly, x):
    """Horner evaluation; exact for rational x, also works for floats."""
    acc = 0
    for c in reversed(p.coeffs()):
        acc = acc * x + c
    if isinstance(acc, Fraction) or isinstance(x, (int, Fraction)):
        return Fraction(acc)
    return acc


def derivative(p: Poly, order: int = 1) -> Poly:
    """k-th derivative, living in P_{n-k}."""
    for _ in range(order):
        if p.n == 0:
            return Poly.zero(0)
        n = p.n
        p = Poly(n - 1, tuple((n - j) * p.e[j] for j in range(n)))
    return p


def reciprocal(p: Poly, c=1) -> Poly:
    """q(x) = x**n p(c/x); e_j(q) = (-1)**n c**j e_{n-j}(p)."""
    c = as_fraction(c)
    n = p.n
    s = (-1) ** n
    return Poly(n, tuple(s * c ** j * p.e[n - j] for j in range(n + 1)))


def dilate(p: Poly, s) -> Poly:
    """s**n p(x/s); roots get multiplied by s."""
    s = as_fraction(s)
    return Poly(p.n, tuple(s ** j * c for j, c in enumerate(p.e)))


def negate_argument(p: Poly) -> Poly:
    """p(-x), exactly."""
    n = p.n
    return Poly(n, tuple((-1) ** (n - j) * c for j, c in enumerate(p.e)))


def substitute_affine(p: Poly, alpha, beta) -> Poly:
    """p(alpha*x + beta) in the same ambient space."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    c = p.coeffs()
    n = p.n
    out = [Fraction(0)] * (n + 1)
    for i, ci in enumerate(c):
        if not ci:
            continue
        for r in range(i + 1):
            out[r] += ci * comb(i, r) * alpha ** r * beta ** (i - r)
    return from_coeffs(out, n)


def power_linear(n: int, a, b, m: int | None = None) -> Poly:
    """(a*x + b)**m inside P_n (m defaults to n)."""
    a, b = as_fraction(a), as_fraction(b)
    m = n if m is None else m
    return from_coeffs([comb(m, i) * a ** i * b ** (m - i) for i in range(m + 1)], n)
