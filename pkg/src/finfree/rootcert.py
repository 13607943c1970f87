"""Exact real-root certification.

``certify`` returns a ``RootCertificate``: every distinct real root of the
polynomial is given either as an exact rational point or as an open
rational interval containing exactly that root, together with its exact
multiplicity (from a square-free decomposition).  Two certification
routes exist:

* ``sturm``: Sturm chains over primitive integer polynomials, used for
  moderate degrees and as the general fallback.
* ``sign-change``: for large squarefree polynomials, numerical root hints
  (Laguerre iteration on exact dyadic evaluations) are checked by exact
  sign evaluation.  n alternating signs for a degree-n polynomial prove n
  distinct real roots, one per bracket.  Hints never enter the result
  unverified; failure falls back to Sturm.

Roots are stored in ascending order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction

from . import _intpoly as ip
from .poly import Poly


class Claim(str, Enum):
    ALL_REAL = "AllReal"
    ALL_POS = "AllPos"
    ALL_NEG = "AllNeg"
    ALL_NONNEG = "AllNonNeg"
    ALL_NONPOS = "AllNonPos"
    IN_UNIT_INTERVAL = "InUnitInterval"
    NOT_ALL_REAL = "NotAllReal"


# c1 implies c2 in the claim lattice
_IMPLIES = {
    Claim.IN_UNIT_INTERVAL: {Claim.IN_UNIT_INTERVAL, Claim.ALL_POS, Claim.ALL_NONNEG, Claim.ALL_REAL},
    Claim.ALL_POS: {Claim.ALL_POS, Claim.ALL_NONNEG, Claim.ALL_REAL},
    Claim.ALL_NEG: {Claim.ALL_NEG, Claim.ALL_NONPOS, Claim.ALL_REAL},
    Claim.ALL_NONNEG: {Claim.ALL_NONNEG, Claim.ALL_REAL},
    Claim.ALL_NONPOS: {Claim.ALL_NONPOS, Claim.ALL_REAL},
    Claim.ALL_REAL: {Claim.ALL_REAL},
    Claim.NOT_ALL_REAL: {Claim.NOT_ALL_REAL},
}


def implies(c1: Claim, c2: Claim) -> bool:
    return Claim(c2) in _IMPLIES[Claim(c1)]


class CertificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class RealRoot:
    """One distinct real root: a point (lo == hi) or inside the open (lo, hi)."""

    lo: Fraction
    hi: Fraction
    mult: int
    factor: tuple = field(repr=False, compare=False)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def point(self) -> Fraction | None:
        return self.lo if self.lo == self.hi else None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def compare(self, c) -> tuple[int, "RealRoot"]:
        """Sign of (root - c), exactly, plus a possibly sharpened root."""
        c = Fraction(c)
        if self.is_exact:
            return _sgn(self.lo - c), self
        if c <= self.lo:
            return 1, self
        if c >= self.hi:
            return -1, self
        sc = ip.sign_at(self.factor, c)
        if sc == 0:
            return 0, replace(self, lo=c, hi=c)
        if sc == ip.sign_at(self.factor, self.lo):
            return 1, replace(self, lo=c)
        return -1, replace(self, hi=c)

    def bisect(self) -> "RealRoot":
        if self.is_exact:
            return self
        m = self.mid()
        s = ip.sign_at(self.factor, m)
        if s == 0:
            return replace(self, lo=m, hi=m)
        if s == ip.sign_at(self.factor, self.lo):
            return replace(self, lo=m)
        return replace(self, hi=m)

    def refine(self, width) -> "RealRoot":
        r = self
        width = Fraction(width)
        while not r.is_exact and r.width > width:
            r = r.bisect()
        return r

    def exact(self) -> "RealRoot":
        """Decide whether the root is rational; if so return it as a point.

        A rational root of a primitive integer polynomial has denominator
        dividing the leading coefficient q, and two rationals with
        denominator <= q differ by at least 1/q^2, so once the interval is
        narrower than that its simplest rational is the only candidate.
        """
        if self.is_exact:
            return self
        q = abs(self.factor[-1])
        r = self.refine(Fraction(1, 2 * q * q))
        if r.is_exact:
            return r
        s = simplest_between(r.lo, r.hi)
        if ip.sign_at(self.factor, s) == 0:
            return replace(r, lo=s, hi=s)
        return r

    def as_float(self) -> float:
        return float(self.mid())

    def to_json(self) -> dict:
        if self.is_exact:
            return {"point": _fs(self.lo), "mult": self.mult}
        return {"interval": [_fs(self.lo), _fs(self.hi)], "mult": self.mult}


def _fs(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in the open interval (lo, hi)."""
    if lo >= hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    fl = math.floor(lo)
    if fl + 1 < hi:
        return Fraction(fl + 1)
    # lo and hi share the integer part; recurse on reciprocals of the fractional parts
    a = lo - fl
    b = hi - fl
    if a == 0:
        # (fl, fl + b) with b <= 1: smallest denominator is fl + 1/k, k > 1/b
        return fl + Fraction(1, math.floor(1 / b) + 1)
    return fl + 1 / simplest_between(1 / b, 1 / a)


@dataclass(frozen=True)
class RootCertificate:
    poly: Poly
    roots: tuple  # ascending RealRoot
    nonreal_count: int
    method: str

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def real_count(self) -> int:
        return sum(r.mult for r in self.roots)

    @property
    def all_real(self) -> bool:
        return self.nonreal_count == 0

    def expanded(self) -> list[RealRoot]:
        """Roots repeated by multiplicity, ascending."""
        out = []
        for r in self.roots:
            out.extend([r] * r.mult)
        return out

    def refine(self, width) -> "RootCertificate":
        return replace(self, roots=tuple(r.refine(width) for r in self.roots))

    def floats(self, rel_width: float = 2.0 ** -53) -> list[float]:
        """Real roots (with multiplicity) as floats after exact refinement."""
        scale = max((max(abs(r.lo), abs(r.hi)) for r in self.roots), default=Fraction(1))
        cert = self.refine(max(scale, Fraction(1, 2 ** 60)) * Fraction(rel_width))
        return [r.as_float() for r in cert.expanded()]

    def signs(self) -> list[tuple[int, int]]:
        """For each distinct root, (sign of root, sign of root - 1)."""
        out = []
        for r in self.roots:
            s0, r = r.compare(0)
            s1, _ = r.compare(1)
            out.append((s0, s1))
        return out

    def claim(self) -> Claim:
        """Strongest claim in the lattice that this certificate proves."""
        if not self.all_real:
            return Claim.NOT_ALL_REAL
        sg = self.signs()
        if all(s0 > 0 for s0, _ in sg):
            if all(s1 < 0 for _, s1 in sg):
                return Claim.IN_UNIT_INTERVAL
            return Claim.ALL_POS
        if all(s0 < 0 for s0, _ in sg):
            return Claim.ALL_NEG
        if all(s0 >= 0 for s0, _ in sg):
            return Claim.ALL_NONNEG
        if all(s0 <= 0 for s0, _ in sg):
            return Claim.ALL_NONPOS
        return Claim.ALL_REAL

    def satisfies(self, claim) -> bool:
        """Does the certificate establish ``claim``? (exact)"""
        claim = Claim(claim)
        if claim is Claim.NOT_ALL_REAL:
            return not self.all_real
        if not self.all_real:
            return False
        sg = self.signs()
        tests = {
            Claim.ALL_REAL: lambda s0, s1: True,
            Claim.ALL_POS: lambda s0, s1: s0 > 0,
            Claim.ALL_NEG: lambda s0, s1: s0 < 0,
            Claim.ALL_NONNEG: lambda s0, s1: s0 >= 0,
            Claim.ALL_NONPOS: lambda s0, s1: s0 <= 0,
            Claim.IN_UNIT_INTERVAL: lambda s0, s1: s0 > 0 and s1 < 0,
        }
        return all(tests[claim](s0, s1) for s0, s1 in sg)

    def multiplicity_at(self, c) -> int:
        c = Fraction(c)
        for r in self.roots:
            s, _ = r.compare(c)
            if s == 0:
                return r.mult
        return 0

    def to_json(self) -> dict:
        return {
            "real": [r.to_json() for r in self.roots],
            "nonreal": self.nonreal_count,
            "claim": self.claim().value,
        }


# isolation


def _isolate_sturm(f) -> list[tuple[Fraction, Fraction]]:
    """Isolate the real roots of a squarefree primitive integer polynomial.

    Returns ascending (lo, hi) with lo == hi for exact points, otherwise an
    open interval whose endpoints are not roots.
    """
    if ip.deg(f) <= 0:
        return []
    chain = ip.sturm_chain(f)
    cache = {}

    def V(x):
        if x not in cache:
            cache[x] = ip.variations([ip.sign_at(g, x) for g in chain])
        return cache[x]

    B = ip.fujiwara_bound(f)
    out = []
    # half-open intervals (a, b]; V(a) - V(b) counts the roots inside
    stack = [(-B, B, V(-B) - V(B))]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            if ip.sign_at(f, b) == 0:
                out.append((b, b))
                continue
            if ip.sign_at(f, a) != 0:
                out.append((a, b))
                continue
        m = (a + b) / 2
        cl = V(a) - V(m)
        # push right first so the left half is processed first
        stack.append((m, b, c - cl))
        stack.append((a, m, cl))
    out.sort(key=lambda t: t[0])
    return out


def _simplest_check(f, lo, hi):
    if lo == hi:
        return lo, hi
    s = simplest_between(lo, hi)
    if ip.sign_at(f, s) == 0:
        return s, s
    return lo, hi


SIGN_CHANGE_MIN_DEGREE = 40


def certify(p: Poly, method: str = "auto") -> RootCertificate:
    """Certify the real roots of p (actual degree, exact multiplicities)."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no root certificate")
    f = ip.from_rationals(p.coeffs())
    d = ip.deg(f)
    if d <= 0:
        return RootCertificate(p, (), 0, "sturm")
    if method in ("auto", "sign-change") and d >= (SIGN_CHANGE_MIN_DEGREE if method == "auto" else 1):
        roots = _certify_sign_change(f)
        if roots is not None:
            return RootCertificate(p, tuple(roots), 0, "sign-change")
        if method == "sign-change":
            raise CertificationError("sign-change certification failed")
    return _certify_sturm(p, f)


def classify(p: Poly) -> Claim:
    """Strongest location claim certified for p."""
    return certify(p).claim()


def _certify_sturm(p: Poly, f) -> RootCertificate:
    d = ip.deg(f)
    factors = ip.squarefree_factors(f)
    sqf = [1]
    for g, _ in factors:
        sqf = ip.mul(sqf, g)
    sqf = ip.primitive(sqf)
    roots = []
    for lo, hi in _isolate_sturm(sqf):
        for g, m in factors:
            if lo == hi:
                if ip.sign_at(g, lo) == 0:
                    break
            elif ip.sign_at(g, lo) != ip.sign_at(g, hi):
                break
        else:  # pragma: no cover - would mean the decomposition is wrong
            raise CertificationError("root not attributable to a squarefree factor")
        if ip.deg(g) == 1:
            lo = hi = Fraction(-g[0], g[1])
        else:
            lo, hi = _simplest_check(g, lo, hi)
        roots.append(RealRoot(lo, hi, m, tuple(g)))
    real = sum(r.mult for r in roots)
    return RootCertificate(p, tuple(roots), d - real, "sturm")


def _float_eval_ratios(f, fd, fdd, x: float):
    """p'/p and p''/p at the dyadic x, from exact integer evaluations."""
    u, v = x.as_integer_ratio()
    P0 = ip.eval_hom(f, u, v)
    if P0 == 0:
        return None
    P1 = ip.eval_hom(fd, u, v)
    P2 = ip.eval_hom(fdd, u, v) if len(fdd) > 0 else 0
    return P1 * v / P0, P2 * v * v / P0


def _laguerre_hints(f, max_iter: int = 80):
    """Approximate real roots in ascending order, assuming all are real and simple.

    Laguerre's method marches from the left, with the already-found roots
    divided out implicitly.  Returns None if something looks wrong.
    """
    d = ip.deg(f)
    fd = ip.deriv(f)
    fdd = ip.deriv(fd)
    # Laguerre-Samuelson: a real-rooted polynomial has all roots within
    # (n-1)^(1/2) standard deviations of the mean
    mean = -f[d - 1] / f[d] / d
    var = ((f[d - 1] * f[d - 1] - 2 * f[d] * f[d - 2]) / (f[d] * f[d]) / d if d > 1 else 0) - mean * mean
    spread = math.sqrt(max(var, 0.0) * max(d - 1, 1))
    scale = abs(mean) + spread + 1e-300
    roots: list[float] = []
    x = mean - spread * (1 + 1e-9) - 1e-12 * scale
    for m in range(d):
        deg_left = d - m
        if m:
            # |G| >= 1/(distance to the next root), so stepping half of
            # 1/|G| from a probe just right of the last root stays left of it
            probe = roots[-1] + 1e-7 * max(abs(roots[-1]), scale * 1e-3)
            r = _float_eval_ratios(f, fd, fdd, probe)
            if r is None:
                return None
            G = r[0] - sum(1.0 / (probe - y) for y in roots)
            if G >= 0:
                return None
            x = probe + 0.5 / -G
        converged = False
        for _ in range(max_iter if m else 20 * max_iter):
            r = _float_eval_ratios(f, fd, fdd, x)
            if r is None:
                converged = True
                break
            g1, g2 = r
            try:
                s1 = sum(1.0 / (x - y) for y in roots)
                s2 = sum(1.0 / (x - y) ** 2 for y in roots)
            except (OverflowError, ZeroDivisionError):
                return None
            G = g1 - s1
            # H = -G' for the deflated polynomial
            H = (g1 * g1 - g2) - s2
            disc = (deg_left - 1) * (deg_left * H - G * G)
            if disc < 0:
                disc = 0.0
            sq = math.sqrt(disc)
            den = G + sq if G > 0 else G - sq
            if den == 0:
                return None
            step = deg_left / den
            x_new = x - step
            if not math.isfinite(x_new):
                return None
            if abs(x_new - x) <= 4e-16 * max(abs(x_new), 1e-300) or x_new == x:
                x = x_new
                converged = True
                break
            x = x_new
        if not converged or (roots and x <= roots[-1]):
            return None
        roots.append(x)
    return roots


def _certify_sign_change(f):
    d = ip.deg(f)
    hints = _laguerre_hints(f)
    if hints is None or len(hints) != d:
        return None
    B = ip.fujiwara_bound(f)
    pts = [-B]
    for a, b in zip(hints, hints[1:]):
        pts.append(Fraction((a + b) / 2))
    pts.append(B)
    if any(x >= y for x, y in zip(pts, pts[1:])):
        return None
    signs = [ip.sign_at(f, x) for x in pts]
    if any(s == 0 for s in signs):
        return None
    if any(s == t for s, t in zip(signs, signs[1:])):
        return None
    ft = tuple(f)
    out = []
    for i, h in enumerate(hints):
        lo, hi = pts[i], pts[i + 1]
        # try a tight bracket around the hint first
        delta = max(abs(h), 1e-300) * 2.0 ** -50
        for _ in range(6):
            a, b = Fraction(h - delta), Fraction(h + delta)
            if lo < a < b < hi:
                sa, sb = ip.sign_at(f, a), ip.sign_at(f, b)
                if sa == 0:
                    lo = hi = a
                    break
                if sb == 0:
                    lo = hi = b
                    break
                if sa != sb:
                    lo, hi = a, b
                    break
            delta *= 64
        out.append(RealRoot(lo, hi, 1, ft))
    return out


# several polynomials at once


@dataclass(frozen=True)
class JointRoot:
    """A distinct real root shared by some of the polynomials."""

    root: RealRoot
    mults: tuple  # multiplicity in each polynomial


def joint_roots(polys) -> list[JointRoot]:
    """Distinct real roots of all polys, ascending, with per-poly multiplicities.

    Equality of roots across polynomials is decided exactly: the roots are
    isolated once for the squarefree part of the product.
    """
    facs = []
    h = [1]
    for p in polys:
        f = ip.from_rationals(p.coeffs())
        fl = ip.squarefree_factors(f) if ip.deg(f) > 0 else []
        facs.append(fl)
        for g, _ in fl:
            h = ip.mul(h, g)
    h = ip.squarefree_part(h) if ip.deg(h) > 0 else [1]
    out = []
    for lo, hi in _isolate_sturm(h):
        lo, hi = _simplest_check(h, lo, hi)
        mults = []
        for fl in facs:
            m = 0
            for g, k in fl:
                if lo == hi:
                    hit = ip.sign_at(g, lo) == 0
                else:
                    hit = ip.sign_at(g, lo) != ip.sign_at(g, hi)
                if hit:
                    m = k
                    break
            mults.append(m)
        out.append(JointRoot(RealRoot(lo, hi, 1, tuple(h)), tuple(mults)))
    return out


def _real_rooted_degree(p: Poly, jr, idx) -> bool:
    return sum(j.mults[idx] for j in jr) == p.degree


def interlaces(p: Poly, q: Poly, strict: bool = False) -> bool:
    """p interlaces q (ascending roots), for deg q in {deg p, deg p - 1}.

    Equal degrees: l1(p) <= l1(q) <= l2(p) <= ... <= ln(p) <= ln(q).
    deg q = deg p - 1: l1(p) <= l1(q) <= ... <= l_{n-1}(q) <= ln(p).
    ``strict`` replaces every <= by <.  Both must be real-rooted.
    """
    dp, dq = p.degree, q.degree
    if dq not in (dp, dp - 1) or dp < 0:
        return False
    jr = joint_roots([p, q])
    if not (_real_rooted_degree(p, jr, 0) and _real_rooted_degree(q, jr, 1)):
        return False
    P, Q = [], []
    for i, j in enumerate(jr):
        P.extend([i] * j.mults[0])
        Q.extend([i] * j.mults[1])
    le = (lambda a, b: a < b) if strict else (lambda a, b: a <= b)
    for i in range(len(Q)):
        if not le(P[i], Q[i]):
            return False
        if i + 1 < len(P) and not le(Q[i], P[i + 1]):
            return False
    return True


class Interlacing(str, Enum):
    P_PREC_Q = "PprecQ"
    Q_PREC_P = "QprecP"
    P_PRECCURLY_Q = "PpreccurlyQ"
    Q_PRECCURLY_P = "QpreccurlyP"
    NEITHER = "Neither"


def interlacing(p: Poly, q: Poly) -> frozenset:
    """Every relation among p < q, q < p, p <= q, q <= p that holds.

    Strict relations come together with their weak versions; the result is
    {NEITHER} when none holds.
    """
    dp, dq = p.degree, q.degree
    if abs(dp - dq) > 1:
        raise ValueError(f"degrees {dp} and {dq} differ by more than one")
    for name, r in (("p", p), ("q", q)):
        if not certify(r).all_real:
            raise CertificationError(f"{name} is not real-rooted")
    out = set()
    for (a, b), weak, strict in (((p, q), Interlacing.P_PRECCURLY_Q, Interlacing.P_PREC_Q),
                                 ((q, p), Interlacing.Q_PRECCURLY_P, Interlacing.Q_PREC_P)):
        if interlaces(a, b):
            out.add(weak)
            if interlaces(a, b, strict=True):
                out.add(strict)
    return frozenset(out or {Interlacing.NEITHER})


@dataclass(frozen=True)
class Enclosure:
    """Exact value (lo == hi) or a closed rational interval containing it."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __float__(self):
        return float((self.lo + self.hi) / 2)


def _gaps(cert: RootCertificate, ratio: bool) -> Enclosure:
    rs = cert.expanded()
    if len(rs) < 2:
        raise ValueError("mesh needs at least two real roots")
    los, his = [], []
    for a, b in zip(rs, rs[1:]):
        if a is b:
            # repeated root
            v = Fraction(1) if ratio else Fraction(0)
            los.append(v)
            his.append(v)
            continue
        if ratio:
            los.append(b.lo / a.hi)
            his.append(b.hi / a.lo)
        else:
            los.append(b.lo - a.hi)
            his.append(b.hi - a.lo)
    return Enclosure(min(los), min(his))


def _maybe_exact(cert: RootCertificate) -> RootCertificate:
    # rational roots of moderate-degree factors become exact points
    if cert.degree <= SIGN_CHANGE_MIN_DEGREE:
        return exactify(cert)
    return cert


def mesh(p, width=Fraction(1, 2 ** 40)) -> Enclosure:
    """min_i (l_{i+1} - l_i) over the real roots of a real-rooted p."""
    cert = p if isinstance(p, RootCertificate) else certify(p)
    if not cert.all_real:
        raise ValueError("mesh is defined for real-rooted polynomials")
    cert = _maybe_exact(cert)
    cert = replace(cert, roots=tuple(r.refine(width) for r in cert.roots))
    return _gaps(cert, ratio=False)


def lmesh(p, width=Fraction(1, 2 ** 40)) -> Enclosure:
    """min_i l_{i+1}/l_i over the roots of p in P(R>0)."""
    cert = p if isinstance(p, RootCertificate) else certify(p)
    if not cert.satisfies(Claim.ALL_POS):
        raise ValueError("lmesh is defined for polynomials with positive roots")
    cert = _maybe_exact(cert)
    rs = []
    for r in cert.roots:
        r = r.refine(width)
        # keep intervals away from 0 so ratios are bounded
        while not r.is_exact and r.lo <= 0:
            r = r.bisect()
        rs.append(r)
    return _gaps(replace(cert, roots=tuple(rs)), ratio=True)


def exactify(cert: RootCertificate) -> RootCertificate:
    """Replace every rational root by its exact point."""
    return replace(cert, roots=tuple(r.exact() for r in cert.roots))


def decide_ge(f, g, max_rounds: int = 12):
    """Decide f >= g for enclosure-valued functions of a width argument.

    Returns True/False when decided, None if still undecided.
    """
    w = Fraction(1, 2 ** 30)
    for _ in range(max_rounds):
        a, b = f(w), g(w)
        if a.lo >= b.hi:
            return True
        if a.hi < b.lo:
            return False
        w /= 2 ** 16
    return None
