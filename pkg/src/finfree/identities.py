"""Exact checks of the convolution and reduction identities for
hypergeometric polynomials.

Every verifier builds both sides independently and compares them twice:
projectively (are the coefficient vectors proportional?) and with the
displayed constant.  Keeping the two apart separates a wrong constant from a
structurally wrong identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .convolution import DiffOperator, add_convolve, mul_convolve, mul_identity
from .hypergeo import DegenerateParameters, in_neg_zn, pfq_std, rising, rising_tuple
from .poly import Poly, as_fraction, derivative, fraction_str, from_coeffs, negate_argument, reciprocal


class PreconditionError(ValueError):
    """A side condition of the identity does not hold."""


@dataclass
class IdentityReport:
    identity: str
    n: int
    params: dict
    structural: bool
    constant_ok: bool
    first_mismatch_k: int | None = None
    routes_agree: bool | None = None
    detail: str = ""
    lhs: Poly | None = field(default=None, repr=False)
    rhs: Poly | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.structural and self.constant_ok and self.routes_agree is not False

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def params_json(self) -> dict:
        def conv(v):
            if isinstance(v, (list, tuple)):
                return [conv(x) for x in v]
            return fraction_str(as_fraction(v))

        return {k: conv(v) for k, v in self.params.items()}


def proportional(p: Poly, q: Poly) -> bool:
    """Whether the coefficient vectors are parallel (zero is parallel to all)."""
    if p.n != q.n:
        return False
    m = next((k for k, c in enumerate(q.e) if c), None)
    if m is None:
        return True
    return all(a * q.e[m] == p.e[m] * b for a, b in zip(p.e, q.e))


def compare(name, n, params, lhs: Poly, rhs_base: Poly, const, routes_agree=None) -> IdentityReport:
    """lhs against const * rhs_base."""
    const = as_fraction(const)
    rhs = rhs_base.scale(const)
    bad = next((k for k, (a, b) in enumerate(zip(lhs.e, rhs.e)) if a != b), None)
    structural = proportional(lhs, rhs_base)
    if const == 0:
        structural = lhs.is_zero()
    return IdentityReport(name, n, dict(params), structural, bad is None, bad, routes_agree, lhs=lhs, rhs=rhs)


def x_power(m: int, sign: int = 1) -> Poly:
    """(sign*x)^m in P_m."""
    return from_coeffs([0] * m + [sign ** m], m)


def one_minus_x(m: int) -> Poly:
    """(1-x)^m in P_m."""
    return from_coeffs([comb(m, i) * (-1) ** i for i in range(m + 1)], m)


# operator route: Lemma-style representation as a series in d/dx


def hypergeometric_operator(n: int, a, b) -> DiffOperator:
    """Operator O with O[x^n] = pFq(-n, a; b; x), written as
    (-1)^n (a)_n * jFi(-b-n+1; -a-n+1; (-1)^(i+j+1) d/dx).  Needs a outside -Z_n."""
    a = [as_fraction(x) for x in a]
    b = [as_fraction(y) for y in b]
    if any(in_neg_zn(x, n) for x in a):
        raise PreconditionError("numerator parameter in -Z_n")
    s = (-1) ** (len(a) + len(b) + 1)
    lead = (-1) ** n * rising_tuple(a, n)
    w = []
    for k in range(n + 1):
        c = rising_tuple([-y - n + 1 for y in b], k) / (rising_tuple([-x - n + 1 for x in a], k) * factorial(k))
        w.append(lead * c * s ** k)
    return DiffOperator(n, tuple(w))


def operator_poly(n: int, a, b) -> Poly:
    xn = [Fraction(0)] * n + [Fraction(1)]
    return from_coeffs(hypergeometric_operator(n, a, b).apply(xn), n)


def operator_add(n: int, spec1, spec2) -> Poly:
    """p [+] q as the composition of the two hypergeometric operators."""
    xn = [Fraction(0)] * n + [Fraction(1)]
    inner = hypergeometric_operator(n, *spec2).apply(xn)
    return from_coeffs(hypergeometric_operator(n, *spec1).apply(inner), n)


def _routes(n, spec1, spec2, direct: Poly):
    try:
        return operator_add(n, spec1, spec2) == direct
    except PreconditionError:
        return None


# multiplicative theorem


def verify_mul_theorem(n: int, a1, b1, a2, b2) -> IdentityReport:
    """pFq(a1; b1) [x] pFq(a2; b2) = (-1)^n pFq(a1 ++ a2; b1 ++ b2).

    Each standard-normalized factor carries a (-1)^n in every e_k, so the
    product has one more than the concatenated polynomial.
    """
    lhs = mul_convolve(pfq_std(n, a1, b1), pfq_std(n, a2, b2))
    rhs = pfq_std(n, list(a1) + list(a2), list(b1) + list(b2))
    return compare("mul_theorem", n, {"a1": a1, "b1": b1, "a2": a2, "b2": b2}, lhs, rhs, (-1) ** n)


def verify_mul_inverse(n: int, a, b) -> IdentityReport:
    """pFq(a; b) [x] pFq(b; a) = (a)_n (b)_n (1-x)^n.

    The factor (a)_n (b)_n is what cancelling the shared parameters costs
    in the standard normalization.
    """
    lhs = mul_convolve(pfq_std(n, a, b), pfq_std(n, b, a))
    const = (-1) ** n * rising_tuple(a, n) * rising_tuple(b, n)
    return compare("mul_inverse", n, {"a": a, "b": b}, lhs, mul_identity(n), const)


def verify_mul_power(n: int, a, b, m: int) -> IdentityReport:
    """m-fold self convolution repeats the parameter tuples."""
    p = pfq_std(n, a, b)
    acc = p
    for _ in range(m - 1):
        acc = mul_convolve(acc, p)
    rhs = pfq_std(n, list(a) * m, list(b) * m)
    return compare("mul_power", n, {"a": a, "b": b, "m": m}, acc, rhs, (-1) ** (n * (m - 1)))


# additive examples

ADDITIVE_EXAMPLES = ("E37", "E38", "E39", "E311", "E312")
ADDITIVE_PARAMS = {
    "E37": ("b1", "b2"),
    "E38": ("a", "b1", "b2"),
    "E39": ("a", "b"),
    "E311": ("a", "b"),
    "E312": ("c", "d"),
}


def _quarter_arg(p: Poly) -> Poly:
    """p(x/4): e_k picks up 4^(k-n)."""
    n = p.n
    return Poly(n, tuple(c * Fraction(4) ** (k - n) for k, c in enumerate(p.e)))


def _additive_sides(example: str, n: int, P: dict):
    half = Fraction(1, 2)
    if example == "E37":
        b1, b2 = P["b1"], P["b2"]
        s1, s2 = ([], [b1]), ([], [b2])
        return s1, s2, pfq_std(n, [], [b1 + b2 + n - 1]), Fraction((-1) ** n)
    if example == "E38":
        a, b1, b2 = P["a"], P["b1"], P["b2"]
        s1 = ([], [b1 + b2 - a])
        s2 = ([a], [a - n + 1 - b1, a - n + 1 - b2])
        return s1, s2, pfq_std(n, [a], [b1, b2]), Fraction((-1) ** n)
    if example == "E39":
        a, b = P["a"], P["b"]
        s = ([a + b - half], [a - Fraction(n - 1, 2), b - Fraction(n - 1, 2)])
        den = rising(2 * a + 2 * b + n - 1, n)
        if den == 0:
            raise DegenerateParameters("(2a+2b+n-1)_n vanishes")
        const = (-1) ** n * rising(a + b - half, n) / den
        rhs = pfq_std(n, [a + b - half, 2 * a + 2 * b + n - 1], [2 * a, 2 * b, a + b])
        return s, s, rhs, const
    if example == "E311":
        a, b = P["a"], P.get("b", P["a"])
        den = rising(a + b + n, n)
        if den == 0:
            raise DegenerateParameters("(a+b+n)_n vanishes")
        rhs = _quarter_arg(pfq_std(n, [a, b, a + b + n], [(a + b) / 2, (a + b + 1) / 2]))
        return ([a], []), ([b], []), rhs, Fraction(-4) ** n / den
    if example == "E312":
        c, d = P["c"], P["d"]
        den = rising(c - half, n)
        if den == 0:
            raise DegenerateParameters("(c-1/2)_n vanishes")
        s1 = ([], [2 * d - 2 * c - n + 1])
        s2 = ([-c - d - n + half, -d - n + 3 * half], [-2 * d - n + 2, -d - n + half, c - d - n + 3 * half])
        rhs = pfq_std(n, [-c - d - n + half, -c - n + 3 * half], [-2 * c - n + 2, -c - n + half, d - c - n + 3 * half])
        return s1, s2, rhs, (-1) ** n * rising(d - half, n) / den
    raise KeyError(example)


def verify_additive_example(example: str, params: dict, n: int) -> IdentityReport:
    """Check one displayed p [+] q = C r identity, constant included.

    The report also records whether composing the two hypergeometric
    differential operators reproduces the directly computed convolution.
    """
    if example not in ADDITIVE_EXAMPLES:
        raise KeyError(f"unknown additive example {example!r}")
    P = {k: as_fraction(v) for k, v in params.items()}
    missing = [k for k in ADDITIVE_PARAMS[example] if k not in P and not (example == "E311" and k == "b")]
    if missing:
        raise PreconditionError(f"{example} needs parameters {missing}")
    s1, s2, rhs, const = _additive_sides(example, n, P)
    lhs = add_convolve(pfq_std(n, *s1), pfq_std(n, *s2))
    return compare(example, n, P, lhs, rhs, const, _routes(n, s1, s2, lhs))


def verify_bessel_square(n: int, a) -> IdentityReport:
    """The a = b case of E311 written with a 3F1 at x/4.

    Cancelling the repeated parameter a changes the standard normalization
    by (a)_n, so the constant is (-4)^n (a)_n / (2a+n)_n.
    """
    a = as_fraction(a)
    den = rising(2 * a + n, n)
    if den == 0:
        raise DegenerateParameters("(2a+n)_n vanishes")
    lhs = add_convolve(pfq_std(n, [a], []), pfq_std(n, [a], []))
    rhs = _quarter_arg(pfq_std(n, [a, 2 * a + n], [a + Fraction(1, 2)]))
    const = Fraction(-4) ** n * rising(a, n) / den
    return compare("E311_square", n, {"a": a}, lhs, rhs, const)


def bessel_square_displayed_constant(n: int, a) -> Fraction:
    """(-4)^n / (2a+n)_n, the closed-form constant for the a = b case."""
    return Fraction(-4) ** n / rising(2 * as_fraction(a) + n, n)


def verify_summation_corollary(n: int, series1, series2, series3) -> IdentityReport:
    """Generic route from a product formula F1 F2 = F3 of series.

    Each ``series`` is (numerator params, denominator params).  With
    p_m = pFq(-n, -beta_m - n + 1; -alpha_m - n + 1) the claim is
    p_1(s_1 x) [+] p_2(s_2 x) = C p_3(s_3 x) where s_m = (-1)^(i_m + j_m)
    and C = (-1)^(n (j1+j2+j3+1)) (beta_1)_n (beta_2)_n / (beta_3)_n.
    Only meaningful when the product formula itself is true.
    """
    polys, signs, betas, js = [], [], [], []
    for num, den in (series1, series2, series3):
        num = [as_fraction(x) for x in num]
        den = [as_fraction(y) for y in den]
        # series jFi: j = len(num), i = len(den)
        p = pfq_std(n, [-y - n + 1 for y in den], [-x - n + 1 for x in num])
        polys.append(p)
        signs.append((len(den) + len(num)) % 2)
        betas.append(den)
        js.append(len(num))
    d3 = rising_tuple(betas[2], n)
    if d3 == 0:
        raise DegenerateParameters("(beta_3)_n vanishes")
    const = (-1) ** (n * (sum(js) + 1)) * rising_tuple(betas[0], n) * rising_tuple(betas[1], n) / d3
    sub = [negate_argument(p) if s else p for p, s in zip(polys, signs)]
    lhs = add_convolve(sub[0], sub[1])
    return compare("corollary", n, {"series": [series1, series2, series3]}, lhs, sub[2], const)


# reductions and reciprocation

REDUCTIONS = ("2ndreduction2F1", "reduction2F1", "reduction2F14bis", "curious", "curious_mul", "reciprocal")


def _int_param(P, name, lo, hi):
    v = P[name]
    if v.denominator != 1 or not lo <= v <= hi:
        raise PreconditionError(f"{name} must be an integer in [{lo}, {hi}]")
    return int(v)


def verify_reduction(identity: str, params: dict, n: int) -> IdentityReport:
    P = {}
    for k, v in params.items():
        P[k] = [as_fraction(x) for x in v] if isinstance(v, (list, tuple)) else as_fraction(v)
    if identity == "2ndreduction2F1":
        b = P["b"]
        k = _int_param(P, "k", 0, n - 1)
        if in_neg_zn(b + k, n):
            raise PreconditionError("b + k lies in -Z_n")
        lhs = pfq_std(n, [b + k + 1], [-n + k + 1])
        rhs = x_power(n - k, -1) * pfq_std(k, [b + n + 1], [n - k + 1])
        return compare(identity, n, P, lhs, rhs, rising(b + k + 1, n - k))
    if identity == "reduction2F1":
        b = P["b"]
        k = _int_param(P, "k", 0, n - 1)
        if in_neg_zn(b + k, n):
            raise PreconditionError("b + k lies in -Z_n")
        lhs = pfq_std(n, [b + k], [b])
        rhs = one_minus_x(n - k) * pfq_std(k, [b + n], [b])
        return compare(identity, n, P, lhs, rhs, rising(b + k, n - k))
    if identity == "reduction2F14bis":
        k = _int_param(P, "k", 0, n)
        j = _int_param(P, "j", k, n)
        lhs = pfq_std(n, [j - k + 1], [1 - k])
        rhs = x_power(k, -1) * one_minus_x(n - j) * pfq_std(j - k, [n + 1], [k + 1])
        return compare(identity, n, P, lhs, rhs, rising(j - k + 1, n + k - j))
    if identity == "curious":
        b = P["b"]
        if b == -n:
            raise PreconditionError("b = -n")
        lhs = pfq_std(n, [b + 1], [b])
        # (x-1)^(n-1) (x - b/(b+n)); the (b+1)_(n-1) comes from the
        # standard normalization, as in the k = 1 case of reduction2F1
        rhs = x_minus(1, n - 1) * x_minus(b / (b + n), 1)
        return compare(identity, n, P, lhs, rhs, (-1) ** n * (b + n) * rising(b + 1, n - 1))
    if identity == "curious_mul":
        b = P["b"]
        if b == -n:
            raise PreconditionError("b = -n")
        p = Poly(n, tuple(P["p"]))
        lhs = mul_convolve(p, pfq_std(n, [b + 1], [b]))
        xdp = derivative(p) * x_power(1)
        rhs = p.scale(b) + xdp
        return compare(identity, n, P, lhs, rhs, (-1) ** n * rising(b + 1, n - 1))
    if identity == "reciprocal":
        a, b = P["a"], P["b"]
        i, j = len(a), len(b)
        lhs = pfq_std(n, a, b)
        q = pfq_std(n, [-n - y + 1 for y in b], [-n - x + 1 for x in a])
        rhs = reciprocal(q, (-1) ** (i + j))
        return compare(identity, n, P, lhs, rhs, (-1) ** ((i + 1) * n))
    raise KeyError(f"unknown reduction {identity!r}")


def x_minus(r, m: int) -> Poly:
    """(x - r)^m in P_m."""
    r = as_fraction(r)
    return Poly(m, tuple(comb(m, i) * r ** i for i in range(m + 1)))


# single entry point for grids and the command line

IDENTITIES = ("mul_theorem", "mul_inverse", "mul_power") + ADDITIVE_EXAMPLES + ("E311_square",) + REDUCTIONS


def _tuple_param(v):
    if isinstance(v, (list, tuple)):
        return [as_fraction(x) for x in v]
    if isinstance(v, str) and "," in v:
        return [as_fraction(x) for x in v.split(",") if x.strip()]
    if v in ("", None):
        return []
    return [as_fraction(v)]


def verify_identity(identity: str, params: dict, n: int) -> IdentityReport:
    """Dispatch on the identity name; see ``IDENTITIES``."""
    P = dict(params)
    try:
        if identity == "mul_theorem":
            return verify_mul_theorem(n, *(_tuple_param(P.get(k, [])) for k in ("a1", "b1", "a2", "b2")))
        if identity == "mul_inverse":
            return verify_mul_inverse(n, _tuple_param(P.get("a", [])), _tuple_param(P.get("b", [])))
        if identity == "mul_power":
            return verify_mul_power(n, _tuple_param(P.get("a", [])), _tuple_param(P.get("b", [])), int(P["m"]))
        if identity in ADDITIVE_EXAMPLES:
            return verify_additive_example(identity, P, n)
        if identity == "E311_square":
            return verify_bessel_square(n, P["a"])
        if identity in REDUCTIONS:
            if identity == "reciprocal":
                P["a"], P["b"] = _tuple_param(P.get("a", [])), _tuple_param(P.get("b", []))
            elif identity == "curious_mul":
                P["p"] = _tuple_param(P["p"])
            return verify_reduction(identity, P, n)
    except KeyError as exc:
        raise PreconditionError(f"{identity} needs parameter {exc.args[0]!r}") from None
    raise KeyError(f"unknown identity {identity!r}")
