"""Parameter domains written as small strings.

Grammar (whitespace ignored)::

    domain := conj ('|' conj)*
    conj   := atom ('&' atom)*
    atom   := ['!'] base
    base   := 'R>' E | 'R>=' E | 'R<' E | 'R<=' E     half lines
            | '(' E ',' E ')'                          open interval
            | '-Z_n'                                   {0, -1, ..., -n+1}
            | 'up(' E ')'                              {E+1, E+2, ...}
            | 'down(' E ')'                            {E-1, E-2, ...}
            | '{' E (',' E)* '}'                       finite set
            | '=' E                                    single point

``E`` is an arithmetic expression over rationals in ``n``, the auxiliary
integers ``k``, ``t``, ``j`` and previously sampled parameters, with
``min``/``max`` allowed.  Everything evaluates in exact Fractions.
"""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass
from fractions import Fraction

_BIN = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}


class Expr:
    __slots__ = ("src", "tree", "names")

    def __init__(self, src: str):
        self.src = src.strip()
        self.tree = ast.parse(self.src, mode="eval").body
        self.names = {n.id for n in ast.walk(self.tree) if isinstance(n, ast.Name)} - {"min", "max"}
        self._check(self.tree)

    def _check(self, node):
        ok = (ast.BinOp, ast.UnaryOp, ast.Constant, ast.Name, ast.Call, ast.Load,
              ast.USub, ast.UAdd) + tuple(_BIN)
        for sub in ast.walk(node):
            if not isinstance(sub, ok):
                raise ValueError(f"unsupported syntax in {self.src!r}")
            if isinstance(sub, ast.Call) and not (isinstance(sub.func, ast.Name) and sub.func.id in ("min", "max")):
                raise ValueError(f"only min/max calls allowed in {self.src!r}")

    def __call__(self, env: dict) -> Fraction:
        return self._eval(self.tree, env)

    def _eval(self, node, env):
        if isinstance(node, ast.Constant):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise KeyError(node.id)
            return Fraction(env[node.id])
        if isinstance(node, ast.UnaryOp):
            v = self._eval(node.operand, env)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            return _BIN[type(node.op)](self._eval(node.left, env), self._eval(node.right, env))
        if isinstance(node, ast.Call):
            args = [self._eval(a, env) for a in node.args]
            return min(args) if node.func.id == "min" else max(args)
        raise ValueError(node)

    def __repr__(self):
        return self.src


@dataclass(frozen=True)
class Atom:
    kind: str  # gt ge lt le open negzn up down set eq
    exprs: tuple
    negated: bool = False

    @property
    def names(self) -> set:
        out = set()
        for e in self.exprs:
            out |= e.names
        return out

    def contains(self, x: Fraction, env: dict) -> bool:
        return self._contains(x, env) != self.negated

    def _contains(self, x, env):
        k = self.kind
        v = [e(env) for e in self.exprs]
        if k == "gt":
            return x > v[0]
        if k == "ge":
            return x >= v[0]
        if k == "lt":
            return x < v[0]
        if k == "le":
            return x <= v[0]
        if k == "open":
            return v[0] < x < v[1]
        if k == "negzn":
            n = int(env["n"])
            return x.denominator == 1 and -n < x <= 0
        if k == "up":
            d = x - v[0]
            return d.denominator == 1 and d >= 1
        if k == "down":
            d = v[0] - x
            return d.denominator == 1 and d >= 1
        if k in ("set", "eq"):
            return x in v
        raise ValueError(k)


def _split_top(s: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in s:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _parse_atom(s: str) -> Atom:
    s = s.strip()
    neg = s.startswith("!")
    if neg:
        s = s[1:].strip()
    for pre, kind in (("R>=", "ge"), ("R<=", "le"), ("R>", "gt"), ("R<", "lt")):
        if s.startswith(pre):
            return Atom(kind, (Expr(s[len(pre):]),), neg)
    if s == "-Z_n":
        return Atom("negzn", (), neg)
    if s.startswith("up(") and s.endswith(")"):
        return Atom("up", (Expr(s[3:-1]),), neg)
    if s.startswith("down(") and s.endswith(")"):
        return Atom("down", (Expr(s[5:-1]),), neg)
    if s.startswith("{") and s.endswith("}"):
        return Atom("set", tuple(Expr(p) for p in _split_top(s[1:-1], ",")), neg)
    if s.startswith("="):
        return Atom("eq", (Expr(s[1:]),), neg)
    if s.startswith("(") and s.endswith(")"):
        parts = _split_top(s[1:-1], ",")
        if len(parts) == 2:
            return Atom("open", (Expr(parts[0]), Expr(parts[1])), neg)
    raise ValueError(f"cannot parse domain atom {s!r}")


@dataclass(frozen=True)
class Domain:
    src: str
    alternatives: tuple  # tuple of tuples of Atom (union of intersections)

    @classmethod
    def parse(cls, src: str) -> "Domain":
        alts = tuple(tuple(_parse_atom(a) for a in _split_top(c, "&")) for c in _split_top(src, "|"))
        return cls(src, alts)

    @property
    def names(self) -> set:
        out = set()
        for conj in self.alternatives:
            for a in conj:
                out |= a.names
        return out

    def contains(self, x, env: dict) -> bool:
        x = Fraction(x)
        return any(all(a.contains(x, env) for a in conj) for conj in self.alternatives)

    def is_point(self) -> bool:
        return len(self.alternatives) == 1 and self.alternatives[0][0].kind == "eq"


# sampling

_DENOMS = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)


def _positive_offset(rng, allow_zero=False) -> Fraction:
    u = rng.random()
    if allow_zero and u < 0.15:
        return Fraction(0)
    if u < 0.4:
        return Fraction(1, rng.randint(2, 24))
    if u < 0.7:
        return Fraction(rng.randint(1, 12), 2)
    return Fraction(rng.randint(1, 80), rng.choice(_DENOMS[1:]))


def _sample_atom(atom: Atom, env: dict, rng) -> Fraction | None:
    if atom.negated:
        return None
    v = [e(env) for e in atom.exprs]
    k = atom.kind
    n = int(env["n"])
    if k in ("gt", "ge"):
        return v[0] + _positive_offset(rng, k == "ge")
    if k in ("lt", "le"):
        return v[0] - _positive_offset(rng, k == "le")
    if k == "open":
        lo, hi = v
        if lo >= hi:
            return None
        u = rng.random()
        if u < 0.2:
            f = Fraction(1, 2)
        elif u < 0.4:
            d = rng.randint(3, 24)
            f = Fraction(rng.choice([1, d - 1]), d)
        else:
            d = rng.choice(_DENOMS[1:])
            f = Fraction(rng.randint(1, d - 1), d)
        return lo + (hi - lo) * f
    if k == "negzn":
        return Fraction(-rng.randint(0, n - 1))
    if k == "up":
        return v[0] + rng.randint(1, 2 * n)
    if k == "down":
        return v[0] - rng.randint(1, 2 * n)
    if k in ("set", "eq"):
        return rng.choice(v)
    raise ValueError(k)


def sample(domain: Domain, env: dict, rng, tries: int = 40) -> Fraction | None:
    """Draw a member of ``domain`` (rejection against the other conjuncts)."""
    for _ in range(tries):
        conj = rng.choice(domain.alternatives)
        x = _sample_atom(conj[0], env, rng)
        if x is None:
            continue
        if all(a.contains(x, env) for a in conj):
            return x
    return None
