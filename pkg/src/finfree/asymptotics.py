"""Limit laws of rescaled hypergeometric root distributions.

This is the only floating-point part of the package.  Roots are certified
exactly and converted to floats in one place (``empirical``); everything
upstream stays in exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb

from scipy.integrate import quad

from .convolution import add_convolve, mul_convolve
from .hypergeo import bessel_hat, hgp_monic, jacobi_hat, laguerre_hat
from .poly import Poly, as_fraction, dilate
from .rootcert import certify


class UnsupportedParameters(ValueError):
    pass


class NumericError(ArithmeticError):
    def __init__(self, msg, bound):
        super().__init__(f"{msg} (achieved error bound {bound:.3g})")
        self.bound = bound


class MeasureKind(str, Enum):
    MP = "MP"
    RMP = "RMP"
    J1 = "J1"
    J2 = "J2"
    J3 = "J3"


@dataclass(frozen=True)
class LimitMeasure:
    """Absolutely continuous part c(x) sqrt((x - lo)(hi - x)) on [lo, hi],
    plus an optional atom at 0.  ``weight`` is the smooth factor c(x)."""

    kind: MeasureKind
    b: float | None
    a: float | None
    lo: float
    hi: float
    atom: float = 0.0

    @classmethod
    def mp(cls, b) -> "LimitMeasure":
        b = float(b)
        if b <= 0:
            raise UnsupportedParameters("MP(b) needs b > 0")
        s = 2 * math.sqrt(b)
        return cls(MeasureKind.MP, b, None, b + 1 - s, b + 1 + s, max(0.0, 1 - b))

    @classmethod
    def rmp(cls, a) -> "LimitMeasure":
        a = float(a)
        if a >= 0:
            raise UnsupportedParameters("RMP(a) needs a < 0")
        s = 2 * math.sqrt(1 - a)
        r1, r2 = 1 / (a - 2 + s), 1 / (a - 2 - s)
        return cls(MeasureKind.RMP, None, a, min(r1, r2), max(r1, r2))

    @classmethod
    def jacobi(cls, b, a) -> "LimitMeasure":
        b, a = float(b), float(a)
        if b > 1 and a > b + 1:
            u, v = math.sqrt(a - b), math.sqrt((a - 1) * b)
            r1, r2 = ((u + v) / a) ** 2, ((u - v) / a) ** 2
            kind = MeasureKind.J1
        elif b > 1 and a < 0:
            u, v = math.sqrt(1 - a), math.sqrt(b * (b - a))
            w, z = math.sqrt((1 - a) * (b - a)), math.sqrt(b)
            r1, r2 = -(((u - v) / (w + z)) ** 2), -(((u + v) / (w - z)) ** 2)
            kind = MeasureKind.J2
        elif a < 0 and b < a - 1:
            u, v = math.sqrt((a - 1) * b), math.sqrt(a - b)
            r1, r2 = ((b - 1) / (u - v)) ** 2, ((b - 1) / (u + v)) ** 2
            kind = MeasureKind.J3
        else:
            raise UnsupportedParameters(f"no Jacobi limit regime for b={b}, a={a}")
        return cls(kind, b, a, min(r1, r2), max(r1, r2))

    def weight(self, x: float) -> float:
        if self.kind is MeasureKind.MP:
            return 1 / (2 * math.pi * x)
        if self.kind is MeasureKind.RMP:
            return -self.a / (2 * math.pi * x * x)
        # all three Jacobi regimes: |a| / (2 pi |x (1 - x)|)
        return abs(self.a) / (2 * math.pi * abs(x * (1 - x)))

    def density(self, x: float) -> float:
        if not self.lo < x < self.hi:
            return 0.0
        return self.weight(x) * math.sqrt((x - self.lo) * (self.hi - x))

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "b": self.b, "a": self.a,
                "support": [self.lo, self.hi], "atom": self.atom}


def displayed_jacobi_density(b, a, x: float) -> float:
    """The Jacobi-regime densities exactly as printed in the source formulas.

    Kept only so the tests can document that they are not probability
    densities (J1 has mass 1/2; J2 and J3 have the wrong shape).
    """
    m = LimitMeasure.jacobi(b, a)
    if not m.lo < x < m.hi:
        return 0.0
    s = math.sqrt((x - m.lo) * (m.hi - x))
    if m.kind is MeasureKind.J1:
        return a / (4 * math.pi) * s / (x * (1 - x))
    if m.kind is MeasureKind.J2:
        return -a / (4 * math.pi) * (x - 1) / x * s
    return -a * x / (4 * math.pi) * s / (x - 1)


def limit_density(m: LimitMeasure, x: float) -> float:
    return m.density(x)


def _quad(m: LimitMeasure, g, tol=1e-10) -> float:
    """Integral of g(x) * density over the support, after x = lo + (hi-lo) sin^2."""
    L = m.hi - m.lo

    def integrand(th):
        s, c = math.sin(th), math.cos(th)
        x = m.lo + L * s * s
        # density dx = weight * (L s c) * (2 L s c) dth
        return m.weight(x) * g(x) * 2 * L * L * s * s * c * c

    val, err = quad(integrand, 0.0, math.pi / 2, epsabs=tol * 1e-2, epsrel=1e-13, limit=200)
    # absolute target, relative once |val| > 1 (large moments are beyond 1e-10 in float)
    if not err <= tol * max(1.0, abs(val)):
        raise NumericError("quadrature did not converge", err)
    return val


def limit_moment(m: LimitMeasure, k: int) -> float:
    if k < 0:
        raise ValueError("k must be non-negative")
    cont = _quad(m, lambda x: x ** k)
    return cont + (m.atom if k == 0 else 0.0)


def total_mass(m: LimitMeasure) -> float:
    return limit_moment(m, 0)


def narayana_mp_moment(b, k: int):
    """sum_j N(k, j) b^j with N(k, j) = C(k, j) C(k, j-1) / k; exact for rational b."""
    if k == 0:
        return 1
    return sum(Fraction(comb(k, j) * comb(k, j - 1), k) * as_fraction(b) ** j for j in range(1, k + 1))


# empirical side


@dataclass(frozen=True)
class EmpiricalDist:
    roots: tuple
    n: int
    width: Fraction = Fraction(0)

    def moment(self, k: int) -> float:
        return math.fsum(r ** k for r in self.roots) / self.n

    def bound(self, k: int) -> float:
        """A-priori error bound n (max|l|)^(k-1) k width on the k-th moment."""
        if k == 0 or not self.roots:
            return 0.0
        big = max(abs(r) for r in self.roots) + float(self.width)
        return self.n * big ** (k - 1) * k * float(self.width)


def empirical(p: Poly, rel_width: float = 2.0 ** -53) -> EmpiricalDist:
    """Certify, refine to ``rel_width`` times the root scale, go to floats."""
    cert = certify(p)
    if not cert.all_real:
        raise ValueError("empirical root distribution needs a real-rooted polynomial")
    roots = sorted(cert.floats(rel_width))
    scale = max((abs(r) for r in roots), default=1.0)
    return EmpiricalDist(tuple(roots), cert.degree, Fraction(scale * rel_width))


def empirical_moments(p: Poly, kmax: int, width=None) -> tuple[list[float], list[float]]:
    """(moments m_0..m_kmax, error bounds)."""
    if width is None:
        dist = empirical(p)
    else:
        cert = certify(p)
        if not cert.all_real:
            raise ValueError("empirical root distribution needs a real-rooted polynomial")
        w = as_fraction(width)
        cert = cert.refine(w)
        roots = sorted(float(r.mid()) for r in cert.expanded())
        dist = EmpiricalDist(tuple(roots), cert.degree, w)
    return [dist.moment(k) for k in range(kmax + 1)], [dist.bound(k) for k in range(kmax + 1)]


# families and reports

FAMILIES = {
    "laguerre": (lambda n, P: laguerre_hat(n, P["b"]), lambda P: LimitMeasure.mp(P["b"])),
    "bessel": (lambda n, P: bessel_hat(n, P["a"]), lambda P: LimitMeasure.rmp(P["a"])),
    "jacobi": (lambda n, P: jacobi_hat(n, P["b"], P["a"]), lambda P: LimitMeasure.jacobi(P["b"], P["a"])),
}


@dataclass
class ConvergenceReport:
    family: str
    params: dict
    measure: LimitMeasure
    rows: list = field(default_factory=list)  # (n, k, empirical, limit, rel_err)
    skipped: list = field(default_factory=list)  # (n, reason)
    slack: float = 2.0

    def max_error(self, n: int) -> float:
        return max(r[4] for r in self.rows if r[0] == n)

    @property
    def n_values(self) -> list[int]:
        return sorted({r[0] for r in self.rows})

    @property
    def monotone(self) -> bool:
        """Max-over-k error never grows by more than ``slack`` along n."""
        errs = [self.max_error(n) for n in self.n_values]
        return all(e2 <= self.slack * e1 for e1, e2 in zip(errs, errs[1:]))


def _rel(x, y):
    return abs(x - y) / abs(y) if y else abs(x - y)


def convergence_report(family: str, params: dict, n_list=(50, 100, 200, 400), kmax: int = 4,
                       slack: float = 2.0) -> ConvergenceReport:
    build, measure_of = FAMILIES[family]
    P = {k: as_fraction(v) for k, v in params.items()}
    m = measure_of(P)
    limits = [limit_moment(m, k) for k in range(kmax + 1)]
    rep = ConvergenceReport(family, P, m, slack=slack)
    for n in n_list:
        try:
            dist = empirical(build(n, P))
        except ValueError as exc:
            rep.skipped.append((n, str(exc)))
            continue
        for k in range(1, kmax + 1):
            e = dist.moment(k)
            rep.rows.append((n, k, e, limits[k], _rel(e, limits[k])))
    return rep


def histogram(p: Poly, m: LimitMeasure, bins: int = 40) -> list[tuple[float, float, float]]:
    """(bin_center, empirical_mass, limit_density) over the limit support."""
    dist = empirical(p)
    lo, hi = m.lo, m.hi
    h = (hi - lo) / bins
    counts = [0] * bins
    for r in dist.roots:
        i = int((r - lo) // h)
        if 0 <= i < bins:
            counts[i] += 1
    return [(lo + (i + 0.5) * h, counts[i] / dist.n, m.density(lo + (i + 0.5) * h)) for i in range(bins)]


# free convolution identities at finite n

FREE_IDENTITIES = ("FBetaQuotient", "MPMP_E37", "Clausen_E39", "BesselBessel_E311")


def _identity_sides(identity: str, n: int, P: dict):
    """(lhs, rhs, limit measure or None, rescale) for one identity at degree n.

    Both sides are built independently; ``rescale`` is the dilation that
    turns the unrescaled HGP identity into one with bounded roots.
    """
    F = Fraction
    if identity == "FBetaQuotient":
        c, d = P["c"], P["d"]
        if not (c > 1 and d > 1):
            raise UnsupportedParameters("needs c, d > 1")
        lhs = mul_convolve(jacobi_hat(n, c, c + d), laguerre_hat(n, c + d))
        return lhs, laguerre_hat(n, c), LimitMeasure.mp(c)
    if identity == "MPMP_E37":
        b1, b2 = P["b1"], P["b2"]
        if not (b1 > 0 and b2 > 0):
            raise UnsupportedParameters("needs b1, b2 > 0")
        lhs = add_convolve(laguerre_hat(n, b1), laguerre_hat(n, b2))
        return lhs, laguerre_hat(n, b1 + b2), LimitMeasure.mp(b1 + b2)
    if identity == "Clausen_E39":
        a, b = P["a"], P["b"]
        if not (a > 1 and b > 1):
            raise UnsupportedParameters("needs a, b > 1")
        c = a + b - F(1, 2 * n)
        p = hgp_monic(n, [a, b], [c])
        return add_convolve(p, p), hgp_monic(n, [2 * a, 2 * b, a + b], [c, 2 * a + 2 * b]), None
    if identity == "BesselBessel_E311":
        a, b = P["a"], P["b"]
        if not (a < 0 and b < 0):
            raise UnsupportedParameters("needs a, b < 0")
        lhs = add_convolve(hgp_monic(n, [], [2 * a]), hgp_monic(n, [], [2 * b]))
        rhs = bessel_bessel_rhs(n, a, b)
        # Bessel-type roots grow like 1/n; rescale both sides by n
        return dilate(lhs, n), dilate(rhs, n), None
    raise KeyError(f"unknown identity {identity!r}")


def bessel_bessel_rhs(n: int, a, b, offset_sign: int = 1) -> Poly:
    """Dil_4 H[a+b, a+b+s/(2n); 2a, 2b, 2a+2b+s/n] with s = ``offset_sign``.

    s = +1 is the form that follows from the Bessel product example; the
    s = -1 variant is the printed one and does not hold.
    """
    a, b = as_fraction(a), as_fraction(b)
    s = Fraction(offset_sign)
    return dilate(hgp_monic(n, [a + b, a + b + s / (2 * n)], [2 * a, 2 * b, 2 * a + 2 * b + s / n]), 4)


@dataclass
class FreeIdentityReport:
    identity: str
    params: dict
    exact: dict  # n -> bool
    rows: list = field(default_factory=list)  # (n, k, lhs moment, rhs moment, rel_err, limit, limit_rel_err)

    @property
    def all_exact(self) -> bool:
        return all(self.exact.values())

    def max_side_error(self) -> float:
        return max((r[4] for r in self.rows), default=0.0)


def free_identity_check(identity: str, params: dict, n_list=(6, 8, 10), moment_n: int = 300,
                        kmax: int = 3) -> FreeIdentityReport:
    P = {k: as_fraction(v) for k, v in params.items()}
    rep = FreeIdentityReport(identity, P, {})
    for n in n_list:
        lhs, rhs, _ = _identity_sides(identity, n, P)
        rep.exact[n] = lhs == rhs
    if moment_n:
        lhs, rhs, m = _identity_sides(identity, moment_n, P)
        dl, dr = empirical(lhs), empirical(rhs)
        for k in range(1, kmax + 1):
            ml, mr = dl.moment(k), dr.moment(k)
            lim = limit_moment(m, k) if m is not None else None
            rep.rows.append((moment_n, k, ml, mr, _rel(ml, mr), lim, None if lim is None else _rel(ml, lim)))
    return rep
