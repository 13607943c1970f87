"""Interlacing and monotonicity statements for parameter-shifted families.

Each family maps (params, n, t) to a pair (left, right) of polynomials for
which ``left`` should interlace ``right``, plus the hypotheses that make the
statement applicable.  ``check_monotone_family`` verifies the hypotheses,
certifies the relation exactly and returns a verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..hypergeo import in_neg_zn, pfq_std
from ..identities import PreconditionError
from ..poly import as_fraction
from ..rootcert import Claim, certify, interlaces

FAMILIES = ("I1F1", "I1F1bis", "I2F0", "I2F1a", "I2F1b", "I2F1c", "T41", "T43", "T44", "T45", "T46")


@dataclass
class MonotoneVerdict:
    family: str
    n: int
    params: dict
    t: Fraction
    relation: str
    status: str
    flagged: bool = False
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def _tuple(v):
    if isinstance(v, (list, tuple)):
        return [as_fraction(x) for x in v]
    return [as_fraction(v)]


def _require(cond, msg):
    if not cond:
        raise PreconditionError(msg)


def _in_0_2(x, name="t"):
    _require(0 <= x <= 2, f"{name} must lie in [0, 2]")


def _base_nonneg(n, a, b):
    """Hypothesis 'base polynomial in P(R>=0)', certified exactly."""
    base = pfq_std(n, a, b)
    _require(not base.is_zero() and certify(base).satisfies(Claim.ALL_NONNEG),
             "base polynomial is not certified to have only non-negative roots")
    return base


def _pairs(family, P, n, t):
    """(left, right) pairs that must satisfy left <= right; the second return
    value is True when the direction is the reversed reading of a statement."""
    s = P.get("s", t)
    if family == "I1F1":
        b = P["b"]
        _require(b > 0, "needs b > 0")
        _in_0_2(t)
        return [(pfq_std(n, [], [b]), pfq_std(n, [], [b + t]))], False
    if family == "I1F1bis":
        b = P["b"]
        _require(b >= n, "needs b >= n")
        return [(pfq_std(n, [], [b]), pfq_std(n, [], [b + 3]))], False
    if family == "I2F0":
        a = P["a"]
        _require(a < -n + 1, "needs a < -n+1")
        _in_0_2(t)
        return [(pfq_std(n, [a], []), pfq_std(n, [a - t], []))], False
    if family in ("I2F1a", "I2F1b", "I2F1c"):
        a, b = P["a"], P["b"]
        _in_0_2(t)
        _in_0_2(s, "s")
        if family == "I2F1a":
            _require(b > 0 and a > n + b, "needs b > 0 and a > n + b")
            return [(pfq_std(n, [a + s], [b]), pfq_std(n, [a + t], [b + t]))], False
        if family == "I2F1b":
            _require(b > 0 and a < -n + 1, "needs b > 0 and a < -n+1")
            return [(pfq_std(n, [a], [b + t]), pfq_std(n, [a - s], [b]))], False
        _require(b < a - n + 1 and a < -n + 1, "needs b < a-n+1 and a < -n+1")
        return [(pfq_std(n, [a - t], [b - t]), pfq_std(n, [a], [b - s]))], False
    if family == "T41":
        a, b, g = P["a"], P["b"], P["gamma"]
        _require(g > 0, "needs gamma > 0")
        _in_0_2(t)
        _base_nonneg(n, a, b)
        return [(pfq_std(n, a, b + [g]), pfq_std(n, a, b + [g + t]))], False
    if family == "T43":
        a, b, g = P["a"], P["b"], P["gamma"]
        _require(g < -n + 1, "needs gamma < -n+1")
        _in_0_2(t)
        _base_nonneg(n, a, b)
        return [(pfq_std(n, a + [g], b), pfq_std(n, a + [g - t], b))], False
    if family == "T44":
        a, b, al, be = P["a"], P["b"], P["alpha"], P["beta"]
        _require(be > 0 and al > be + n - 1, "needs beta > 0 and alpha > beta + n - 1")
        _in_0_2(t)
        _in_0_2(s, "s")
        _base_nonneg(n, a, b)
        return [(pfq_std(n, a + [al + s], b + [be]), pfq_std(n, a + [al + t], b + [be + t]))], False
    if family == "T45":
        a, b = P["a"], P["b"]
        _require(all(y > 0 for y in b), "needs every b > 0")
        _require(all(x < -n + 1 for x in a), "needs every a < -n+1")
        _in_0_2(t)
        idx = int(P.get("index", 0))
        pairs = []
        base = pfq_std(n, a, b)
        if b:
            bt = list(b)
            bt[idx % len(b)] += t
            pairs.append((base, pfq_std(n, a, bt)))
        if a:
            at = list(a)
            at[idx % len(a)] -= t
            pairs.append((pfq_std(n, at, b), base))
        odd = len(a) % 2 == 1
        if odd:
            pairs = [(r, l) for l, r in pairs]
        return pairs, odd
    raise KeyError(f"unknown family {family!r}")


def _norm_params(family: str, params: dict) -> dict:
    P = {}
    for k, v in params.items():
        if k in ("a", "b") and family.startswith("T"):
            P[k] = _tuple(v)
        elif k == "index":
            P[k] = int(v)
        else:
            P[k] = as_fraction(v)
    return P


def check_monotone_family(family: str, params: dict, n: int, t=Fraction(1)) -> MonotoneVerdict:
    """Certify the interlacing (or, for T46, positivity) claimed by ``family``.

    For T45 with an odd number of numerator parameters the relation is
    checked in the reversed direction; such verdicts carry ``flagged=True``
    because the reversed statement is given without restated hypotheses.
    """
    if family not in FAMILIES:
        raise KeyError(f"unknown family {family!r}")
    P = _norm_params(family, params)
    t = as_fraction(t)
    if family == "T46":
        a, b = P["a"], P["b"]
        _require(len(b) >= len(a), "needs j >= i")
        _require(all(y > 0 for y in b), "needs every b > 0")
        _require(all(a[s] >= n - 1 + b[s] for s in range(len(a))), "needs a_s >= n-1+b_s")
        ok = certify(pfq_std(n, a, b)).satisfies(Claim.ALL_POS)
        return MonotoneVerdict(family, n, P, t, "AllPos", "PASS" if ok else "FAIL")
    pairs, reversed_ = _pairs(family, P, n, t)
    for idx, (left, right) in enumerate(pairs):
        if not interlaces(left, right):
            return MonotoneVerdict(family, n, P, t, "reversed" if reversed_ else "left<=right", "FAIL",
                                   reversed_, f"pair {idx} does not interlace")
    return MonotoneVerdict(family, n, P, t, "reversed" if reversed_ else "left<=right", "PASS", reversed_)


# sampling valid instances


def _q(rng, lo, hi, dens=(1, 2, 3, 4, 6)):
    d = rng.choice(dens)
    return Fraction(rng.randint(int(lo * d) + 1, int(hi * d) - 1), d) if hi > lo else Fraction(lo)


def _t(rng):
    return rng.choice([Fraction(0), Fraction(2), Fraction(1, 2), Fraction(1), Fraction(3, 2),
                       Fraction(rng.randint(1, 19), 10)])


def _nonneg_base(n, rng):
    """A base polynomial certified in P(R>=0) by construction."""
    i = rng.choice([0, 0, 2])
    j = rng.choice([0, 1, 1, 2])
    a = [-n + 1 - _q(rng, 0, 6) for _ in range(i)]
    b = [_q(rng, 0, 8) for _ in range(j)]
    if j and rng.random() < 0.2 and i == 0:
        b[0] = Fraction(-rng.randint(0, n - 1))  # root at 0 (Laguerre with b in -Z_n)
    return a, b


def sample_instance(family: str, n: int, rng: random.Random) -> tuple[dict, Fraction]:
    t = _t(rng)
    if family == "I1F1":
        return {"b": _q(rng, 0, 12)}, t
    if family == "I1F1bis":
        return {"b": n + _q(rng, -1, 10) + 1}, t
    if family == "I2F0":
        return {"a": -n + 1 - _q(rng, 0, 10)}, t
    if family == "I2F1a":
        b = _q(rng, 0, 8)
        return {"a": n + b + _q(rng, 0, 8), "b": b, "s": _t(rng)}, t
    if family == "I2F1b":
        return {"a": -n + 1 - _q(rng, 0, 8), "b": _q(rng, 0, 8), "s": _t(rng)}, t
    if family == "I2F1c":
        a = -n + 1 - _q(rng, 0, 8)
        return {"a": a, "b": a - n + 1 - _q(rng, 0, 8), "s": _t(rng)}, t
    if family in ("T41", "T43", "T44"):
        a, b = _nonneg_base(n, rng)
        P = {"a": a, "b": b}
        if family == "T41":
            P["gamma"] = _q(rng, 0, 10)
        elif family == "T43":
            P["gamma"] = -n + 1 - _q(rng, 0, 8)
        else:
            be = _q(rng, 0, 6)
            P.update(beta=be, alpha=be + n - 1 + _q(rng, 0, 8), s=_t(rng))
        return P, t
    if family == "T45":
        i = rng.randint(0, 3)
        j = rng.randint(0 if i else 1, 2)
        a = [-n + 1 - _q(rng, 0, 6) for _ in range(i)]
        b = [_q(rng, 0, 8) for _ in range(j)]
        return {"a": a, "b": b, "index": rng.randint(0, 3)}, t
    if family == "T46":
        i = rng.randint(0, 2)
        j = rng.randint(i, 3) or 1
        b = [_q(rng, 0, 6) for _ in range(j)]
        a = [n - 1 + b[s] + rng.choice([Fraction(0), _q(rng, 0, 6)]) for s in range(i)]
        return {"a": a, "b": b}, t
    raise KeyError(family)


def sweep_family(family: str, n_list=(5, 8), samples: int = 20, seed=0) -> list[MonotoneVerdict]:
    out = []
    for n in n_list:
        rng = random.Random(f"{seed}:{family}:{n}")
        for _ in range(samples):
            params, t = sample_instance(family, n, rng)
            if any(in_neg_zn(x, n) for x in _tuple(params.get("a", []))):
                continue
            out.append(check_monotone_family(family, params, n, t))
    return out
