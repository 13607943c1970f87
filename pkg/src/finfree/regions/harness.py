"""Sampling and certification harness for the root-location tables."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..hypergeo import HypergeomSpec, in_neg_zn, pfq_std
from ..rootcert import Claim, RootCertificate, certify
from .domains import Atom
from .registry import EXCLUDED, TABLES, Row, get_row

AUX_NAMES = ("k", "t", "j")


@dataclass
class Verdict:
    table: str
    row: int
    n: int
    params: dict
    expected: str
    certified: str
    status: str  # PASS / FAIL
    detail: str = ""
    certificate: RootCertificate | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def _rng(seed, *parts) -> random.Random:
    return random.Random(":".join(str(p) for p in (seed,) + parts))


def _sample_aux(name: str, n: int, rng) -> Fraction:
    if name == "k":
        return Fraction(rng.randint(0, n - 1))
    if name == "j":
        return Fraction(rng.randint(0, 1))
    if name == "t":
        if rng.random() < 0.6:
            return Fraction(rng.randint(0, n - 1))
        return n - 2 + Fraction(rng.randint(1, 40), rng.choice((2, 3, 4, 5, 7, 8)))
    raise KeyError(name)


def sample_params(row: Row, n: int, rng, tries: int = 400) -> dict | None:
    """One parameter point satisfying the row's predicates (fresh aux values)."""
    from .domains import sample

    for _ in range(tries):
        env = {"n": Fraction(n)}
        for x in row.aux:
            env[x] = _sample_aux(x, n, rng)
        ok = True
        for name, dom in row.domains:
            v = sample(dom, env, rng)
            if v is None:
                ok = False
                break
            env[name] = v
        if not ok:
            continue
        if any(in_neg_zn(env[a], n) for a in row.a):
            continue
        if not guards_hold(row, env):
            continue
        params = {name: env[name] for name, _ in row.domains}
        return params
    return None


def guards_hold(row: Row, env: dict) -> bool:
    return all(any(dom.contains(env[name], env) for name, dom in clause) for clause in row.guards)


def _aux_candidates(row: Row, n: int, params: dict) -> list[dict]:
    """Assignments of the auxiliary quantifiers worth trying for membership."""
    choices = {}
    for x in row.aux:
        if x == "k":
            choices[x] = [Fraction(i) for i in range(n)]
        elif x == "j":
            choices[x] = [Fraction(0), Fraction(1)]
        else:
            choices[x] = [Fraction(i) for i in range(n)]
    combos = [dict(zip(choices, vals)) for vals in itertools.product(*choices.values())] or [{}]
    if "t" not in row.aux:
        return combos
    # t may also be real > n-2: solve the affine equations that mention it
    out = list(combos)
    for base in combos:
        for name, dom in row.domains:
            for conj in dom.alternatives:
                for atom in conj:
                    if "t" not in atom.names or atom.kind not in ("eq", "set"):
                        continue
                    for e in atom.exprs:
                        try:
                            env0 = {"n": Fraction(n), **params, **base, "t": Fraction(0)}
                            env1 = dict(env0, t=Fraction(1))
                            e0, e1 = e(env0), e(env1)
                        except KeyError:
                            continue
                        if e1 == e0:
                            continue
                        t = (params[name] - e0) / (e1 - e0)
                        if t > n - 2 or (t.denominator == 1 and 0 <= t < n):
                            out.append(dict(base, t=t))
    return out


def in_row(row: Row, n: int, params: dict) -> bool:
    """Exact membership of a parameter point in the row's region."""
    if n < row.min_n:
        return False
    if set(params) != {name for name, _ in row.domains}:
        return False
    params = {k: Fraction(v) for k, v in params.items()}
    if any(in_neg_zn(params[a], n) for a in row.a):
        return False
    for aux in _aux_candidates(row, n, params):
        env = {"n": Fraction(n), **params, **aux}
        if all(dom.contains(params[name], env) for name, dom in row.domains) and guards_hold(row, env):
            return True
    return False


def spec_for(row: Row, n: int, params: dict) -> HypergeomSpec:
    return HypergeomSpec(n, [params[a] for a in row.a], [params[b] for b in row.b])


def check_row(row: Row, n: int, params: dict) -> Verdict:
    """Certify the polynomial at ``params`` and compare with the row's claim."""
    params = {k: Fraction(v) for k, v in params.items()}
    if not in_row(row, n, params):
        raise ValueError(f"parameters {params} are not in {row.key} at n={n}")
    p = pfq_std(n, [params[a] for a in row.a], [params[b] for b in row.b])
    cert = certify(p)
    ok = cert.satisfies(row.expect)
    detail = ""
    if ok and row.zero_mult is not None:
        from .domains import Expr

        want = int(Expr(row.zero_mult)({"n": n, **params}))
        got = cert.multiplicity_at(0)
        if got != want:
            ok = False
            detail = f"root at 0 has multiplicity {got}, expected {want}"
    return Verdict(
        row.table, row.row, n, params, row.expect, cert.claim().value,
        "PASS" if ok else "FAIL", detail, None if ok else cert,
    )


def sweep_row(row: Row, n: int, samples: int, seed) -> list[Verdict]:
    rng = _rng(seed, row.table, row.row, n)
    out, seen = [], set()
    attempts = 0
    while len(out) < samples and attempts < samples * 20:
        attempts += 1
        params = sample_params(row, n, rng)
        if params is None:
            break
        key = tuple(sorted(params.items()))
        if key in seen:
            continue
        seen.add(key)
        out.append(check_row(row, n, params))
    return out


def check_table(table: str, n_list=(5, 8, 12), samples: int = 20, seed=0, rows=None) -> list[Verdict]:
    """Sweep every row (or the chosen ``rows``) of a table."""
    out = []
    for row in TABLES[table]:
        if rows is not None and row.row not in rows:
            continue
        for n in n_list:
            if n < row.min_n:
                continue
            out.extend(sweep_row(row, n, samples, seed))
    return out


def check_excluded(n: int, params: dict, region: int | None = None) -> Verdict:
    """Certify that 2F2(-n, a; b1, b2) is not real-rooted in an exclusion region."""
    rows = EXCLUDED if region is None else [get_row("EX_2F2", region)]
    params = {k: Fraction(v) for k, v in params.items()}
    for row in rows:
        if in_row(row, n, params):
            return check_row(row, n, params)
    raise ValueError(f"{params} lies in no exclusion region at n={n}")


def sweep_excluded(n_list=(4, 5, 8), samples: int = 50, seed=0) -> list[Verdict]:
    out = []
    for row in EXCLUDED:
        for n in n_list:
            out.extend(sweep_row(row, n, samples, seed))
    return out


@dataclass(frozen=True)
class Match:
    row: Row
    params: dict


def applicable_rows(spec: HypergeomSpec) -> list[Match]:
    """Rows whose region contains the spec, trying all role permutations."""
    n = spec.n
    out = []
    seen = set()
    for row in [r for rows in TABLES.values() for r in rows]:
        if (len(row.a), len(row.b)) != spec.shape:
            continue
        for pa in set(itertools.permutations(spec.a)):
            for pb in set(itertools.permutations(spec.b)):
                params = dict(zip(row.a, pa)) | dict(zip(row.b, pb))
                if in_row(row, n, params) and row.key not in seen:
                    seen.add(row.key)
                    out.append(Match(row, params))
    return out
