"""Finite free multiplicative and additive convolutions on P_n.

Three independent routes are provided for the additive convolution (the
coefficient formula, the derivative sum and the differential-operator
composition).  They share nothing but the Poly container, so agreement
between them is a meaningful check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .poly import Poly, from_coeffs, derivative


def _check(p: Poly, q: Poly):
    if p.n != q.n:
        raise ValueError(f"ambient degree mismatch: {p.n} vs {q.n}")


def mul_convolve(p: Poly, q: Poly) -> Poly:
    """e_k(p [x] q) = e_k(p) e_k(q) / C(n, k)."""
    _check(p, q)
    n = p.n
    return Poly(n, tuple(a * b / comb(n, k) for k, (a, b) in enumerate(zip(p.e, q.e))))


def add_convolve(p: Poly, q: Poly) -> Poly:
    """Coefficient formula.

    With f_i = e_i (n-i)!/n! the weight (n-i)!(n-j)!/(n!(n-k)!) factors, so
    e_k = n!/(n-k)! * sum_{i+j=k} f_i(p) f_j(q).
    """
    _check(p, q)
    n = p.n
    nf = factorial(n)
    fp = [Fraction(c * factorial(n - i), nf) for i, c in enumerate(p.e)]
    fq = [Fraction(c * factorial(n - i), nf) for i, c in enumerate(q.e)]
    out = []
    for k in range(n + 1):
        s = sum((fp[i] * fq[k - i] for i in range(k + 1) if fp[i] and fq[k - i]), Fraction(0))
        out.append(s * nf / factorial(n - k))
    return Poly(n, tuple(out))


def add_convolve_derivatives(p: Poly, q: Poly) -> Poly:
    """(1/n!) sum_i p^(i)(x) q^(n-i)(0), computed in the power basis."""
    _check(p, q)
    n = p.n
    qc = q.coeffs()
    total = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        # q^(n-i)(0) = (n-i)! * [x^(n-i)] q
        w = factorial(n - i) * qc[n - i]
        if not w:
            continue
        for d, c in enumerate(derivative(p, i).coeffs()):
            total[d] += w * c
    nf = factorial(n)
    return from_coeffs([c / nf for c in total], n)


@dataclass(frozen=True)
class DiffOperator:
    """sum_j w_j d^j acting on polynomials of degree <= n."""

    n: int
    weights: tuple

    @classmethod
    def of(cls, p: Poly) -> "DiffOperator":
        """D_p with D_p[x^n] = p: weights (-1)^j e_j(p) / <n>_j."""
        n = p.n
        w = []
        for j, c in enumerate(p.e):
            fall = factorial(n) // factorial(n - j)
            w.append(Fraction((-1) ** j) * c / fall)
        return cls(n, tuple(w))

    def apply(self, coeffs):
        """Act on ascending power-basis coefficients; returns the same form."""
        c = [Fraction(x) for x in coeffs]
        out = [Fraction(0)] * len(c)
        cur = c
        for w in self.weights:
            if w:
                for i, x in enumerate(cur):
                    out[i] += w * x
            # differentiate once
            cur = [i * cur[i] for i in range(1, len(cur))] + [Fraction(0)]
        return out


def add_convolve_operator(p: Poly, q: Poly) -> Poly:
    """p [+] q = D_p[D_q[x^n]]."""
    _check(p, q)
    n = p.n
    xn = [Fraction(0)] * n + [Fraction(1)]
    inner = DiffOperator.of(q).apply(xn)
    return from_coeffs(DiffOperator.of(p).apply(inner), n)


ADD_ROUTES = {
    "coefficients": add_convolve,
    "derivatives": add_convolve_derivatives,
    "operator": add_convolve_operator,
}


@dataclass(frozen=True)
class OracleReport:
    agree: bool
    results: dict
    first_mismatch: tuple | None  # (route, k)


def compare_add_routes(p: Poly, q: Poly) -> OracleReport:
    res = {name: f(p, q) for name, f in ADD_ROUTES.items()}
    ref = res["coefficients"]
    for name, r in res.items():
        if r != ref:
            k = next(i for i, (a, b) in enumerate(zip(ref.e, r.e)) if a != b)
            return OracleReport(False, res, (name, k))
    return OracleReport(True, res, None)


def add_vanishes(p: Poly, q: Poly) -> bool:
    """p [+] q is zero exactly when deg p + deg q < n (nonzero inputs)."""
    _check(p, q)
    if p.is_zero() or q.is_zero():
        return True
    return p.degree + q.degree < p.n


def additive_inverse(p: Poly) -> Poly:
    """r with p [+] r = x^n, by forward substitution.  Needs e_0 != 0."""
    n = p.n
    if p.e[0] == 0:
        raise ValueError("additive inverse needs e_0 != 0")
    nf = factorial(n)
    fp = [Fraction(c * factorial(n - i), nf) for i, c in enumerate(p.e)]
    # target f-sequence of x^n is (1, 0, ..., 0)
    fr = [1 / fp[0]]
    for k in range(1, n + 1):
        s = sum(fp[k - j] * fr[j] for j in range(k))
        fr.append(-s / fp[0])
    return Poly(n, tuple(f * nf / factorial(n - i) for i, f in enumerate(fr)))


def multiplicative_inverse(p: Poly) -> Poly:
    """r with p [x] r = (x-1)^n.  Needs every e_k != 0."""
    n = p.n
    bad = [k for k, c in enumerate(p.e) if c == 0]
    if bad:
        raise ValueError(f"multiplicative inverse needs e_k != 0; e_{bad[0]} = 0")
    return Poly(n, tuple(Fraction(comb(n, k) ** 2) / c for k, c in enumerate(p.e)))


def mul_identity(n: int) -> Poly:
    """(x-1)^n."""
    return Poly(n, tuple(comb(n, k) for k in range(n + 1)))


def add_identity(n: int) -> Poly:
    """x^n."""
    return Poly.monomial(n)
