"""Root-location tables for pFq(-n, a; b; x) in standard normalization.

Each row lists its parameters in sampling order as ``name: domain`` pairs
(see ``domains`` for the syntax).  Auxiliary quantifiers::

    k in Z_n = {0, ..., n-1}
    t in Z_n or t > n-2
    j in {0, 1}

Every row additionally assumes that no upstairs parameter lies in -Z_n.
Expected claims use the names from ``finfree.rootcert.Claim``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .domains import Domain


@dataclass(frozen=True)
class Row:
    table: str
    row: int
    a: tuple  # upstairs parameter names, in order
    b: tuple  # downstairs parameter names
    domains: tuple  # ((name, Domain), ...) in sampling order
    aux: tuple
    expect: str
    min_n: int = 1
    zero_mult: str | None = None  # expected multiplicity of the root at 0
    # extra side conditions: clauses ANDed, each an OR of (name, Domain)
    guards: tuple = ()

    @property
    def key(self) -> str:
        return f"{self.table}:{self.row}"

    def domain(self, name: str) -> Domain:
        return dict(self.domains)[name]

    def to_json(self) -> dict:
        return {
            "table": self.table,
            "row": self.row,
            "a": list(self.a),
            "b": list(self.b),
            "domains": [[k, d.src] for k, d in self.domains],
            "aux": list(self.aux),
            "expect": self.expect,
            "min_n": self.min_n,
            "zero_mult": self.zero_mult,
            "guards": [[[k, d.src] for k, d in clause] for clause in self.guards],
        }


def _aux_of(domains) -> tuple:
    used = set()
    for _, d in domains:
        used |= d.names
    return tuple(x for x in ("k", "t", "j") if x in used)


def _row(table, row, a, b, spec, expect, guards=(), **kw) -> Row:
    doms = tuple((name, Domain.parse(src)) for name, src in spec)
    gs = tuple(tuple((name, Domain.parse(src)) for name, src in clause) for clause in guards)
    aux = _aux_of(doms + tuple(x for clause in gs for x in clause))
    aux = tuple(x for x in ("k", "t", "j") if x in aux or any(name == x for clause in gs for name, _ in clause))
    return Row(table, row, tuple(a), tuple(b), doms, aux, expect, guards=gs, **kw)


POS, NEG, NONNEG, NONPOS, REAL, NOTREAL = (
    "AllPos", "AllNeg", "AllNonNeg", "AllNonPos", "AllReal", "NotAllReal")

# Table 1: 1F0, 1F1(-n; b), 2F0(-n, a)
T1 = [
    _row("T1_1F1", 1, [], [], [], POS),
    _row("T1_1F1", 2, [], ["b"], [("b", "R>0")], POS),
    _row("T1_1F1", 3, [], ["b"], [("b", "(-1,0)")], REAL),
    _row("T1_1F1", 4, [], ["b"], [("b", "-Z_n")], NONNEG, zero_mult="-b+1"),
    _row("T1_1F1", 5, ["a"], [], [("a", "R<-n+1")], NEG),
    _row("T1_1F1", 6, ["a"], [], [("a", "(-n+1,-n+2)")], REAL),
]

# Table 2: 2F1(-n, a; b)
_A2, _B2 = ["a"], ["b"]
T2 = [
    _row("T2_2F1", 1, _A2, _B2, [("b", "-Z_n | R>=0"), ("a", "R<-n+1")], NONPOS),
    _row("T2_2F1", 2, _A2, _B2, [("b", "-Z_n | R>=0"), ("a", "up(b) | R>b+n-2")], NONNEG),
    _row("T2_2F1", 3, _A2, _B2, [("a", "R<-n+1"), ("b", "R<a-n+2 | down(a)")], POS),
    _row("T2_2F1", 4, _A2, _B2, [("a", "(-n+1,-n+2)"), ("b", "-Z_n | R>-1")], REAL),
    _row("T2_2F1", 5, _A2, _B2, [("a", "(-n+1,-n+2)"), ("b", "R<a-n+2 | down(a)")], REAL),
    _row("T2_2F1", 6, _A2, _B2, [("b", "(-1,0)"), ("a", "R<-n+1 | R>b+n-2")], REAL),
]

# the eight rows built from special 2F2 polynomials; reused by T3 and T6
_SPECIAL_2F2 = [
    [("b2", "R>0"), ("b1", "{2-b2, 1-b2} & R>0"), ("a", "=k+1/2")],
    [("b2", "R>0"), ("b1", "=(b2+t+1)/2"), ("a", "=b1+k-1/2")],
    [("b2", "R>0"), ("b1", "=2*(b2-1+t)"), ("a", "=(b1+1)/2+k")],
    [("b2", "R>0"), ("b1", "=2*(b2+t)-1"), ("a", "=b1/2+k")],
    [("b2", "(0,1)"), ("b1", "=2*b2-2"), ("a", "=b2-1/2")],
    [("b2", "(-1,0)"), ("b1", "=2*b2-1"), ("a", "=b2-1/2")],
    [("b2", "(1/2,1)"), ("b1", "=2*b2-2"), ("a", "=b2+k-1/2")],
    [("b2", "(-1,0)"), ("b1", "{1-b2, 2-b2}"), ("a", "=k+1/2")],
]
_SPECIAL_EXPECT = [POS, POS, POS, POS, REAL, REAL, REAL, REAL]
# Side conditions under which the construction of rows 3 and 4 works: the
# base polynomial needs 2d-2 > 0 (row 3) and 2d-1 > 0 unless k = 0 (row 4),
# where d = b2 + t.  Without them there are certified counterexamples.
_SPECIAL_GUARDS = [(), (), [[("b1", "R>0")]], [[("k", "=0"), ("b1", "R>0")]], (), (), (), ()]

# Table 3: 2F2(-n, a; b1, b2)
_A3, _B3 = ["a"], ["b1", "b2"]
T3 = [
    _row("T3_2F2", 1, _A3, _B3, [("b2", "R>0"), ("b1", "-Z_n | R>0"), ("a", "R<-n+1")], NONPOS),
    _row("T3_2F2", 2, _A3, _B3, [("b2", "R>0"), ("b1", "-Z_n | R>0"), ("a", "up(b1) | R>b1+n-2")], NONNEG),
    _row("T3_2F2", 3, _A3, _B3, [("b2", "R>0"), ("a", "R<-n+1"), ("b1", "R<a-n+2 | down(a)")], POS),
    _row("T3_2F2", 4, _A3, _B3, [("b2", "R>0"), ("a", "(-n+1,-n+2)"), ("b1", "-Z_n | R>-1")], REAL),
    _row("T3_2F2", 5, _A3, _B3, [("b2", "R>0"), ("a", "(-n+1,-n+2)"), ("b1", "R<a-n+2 | down(a)")], REAL),
    _row("T3_2F2", 6, _A3, _B3, [("b2", "R>0"), ("b1", "(-1,0)"), ("a", "R<-n+1 | R>b1+n-2")], REAL),
] + [
    _row("T3_2F2", 7 + i, _A3, _B3, spec, _SPECIAL_EXPECT[i], guards=_SPECIAL_GUARDS[i], min_n=4)
    for i, spec in enumerate(_SPECIAL_2F2)
]

# the eight rows built from special 3F1 polynomials; reused by T4 and T7
_SPECIAL_3F1 = [
    [("a2", "R<-n+1"), ("a1", "{-a2-2*n+j} & R<-n+1"), ("b", "=-n-k+1/2")],
    [("a2", "R<-n+1"), ("a1", "=(a2-n-t)/2"), ("b", "=a1-k+1/2")],
    [("a2", "R<-n+1"), ("a1", "=2*a2+n+1-2*t"), ("b", "=(a1-n)/2-k")],
    [("a2", "R<-n+1"), ("a1", "=2*a2+n-2*t"), ("b", "=(a1-n+1)/2-k")],
    [("a2", "(-n,-n+1)"), ("a1", "=2*a2+n+1"), ("b", "=a2+1/2")],
    [("a2", "(-n+1,-n+2)"), ("a1", "=2*a2+n"), ("b", "=a2+1/2")],
    [("a2", "(-n,-n+1/2)"), ("a1", "=2*a2+n+1"), ("b", "=a2-k+1/2")],
    [("a2", "(-n+1,-n+2)"), ("a1", "=-a2-2*n+j"), ("b", "=-n-k+1/2")],
]
_SPECIAL_3F1_EXPECT = [NEG, NEG, NEG, NEG, REAL, REAL, REAL, REAL]
# reciprocal images of the 2F2 side conditions (b1 > 0 becomes a1 < -n+1)
_SPECIAL_3F1_GUARDS = [(), (), [[("a1", "R<-n+1")]], [[("k", "=0"), ("a1", "R<-n+1")]], (), (), (), ()]

# Table 4: 3F1(-n, a1, a2; b)
_A4, _B4 = ["a1", "a2"], ["b"]
T4 = [
    _row("T4_3F1", 1, _A4, _B4, [("a1", "R<-n+1"), ("a2", "R<-n+1"), ("b", "R>0")], POS),
    _row("T4_3F1", 2, _A4, _B4, [("a1", "R<-n+1"), ("a2", "R<-n+1"), ("b", "R<a1-n+2")], NEG),
    _row("T4_3F1", 3, _A4, _B4, [("b", "R>0"), ("a1", "R>b+n-2"), ("a2", "R<-n+1")], NEG),
    _row("T4_3F1", 4, _A4, _B4, [("a1", "R<-n+2 & !{-n+1}"), ("a2", "R<-n+1"), ("b", "(-1,0)")], REAL),
    _row("T4_3F1", 5, _A4, _B4, [("b", "(-1,0)"), ("a1", "R>b+n-2"), ("a2", "R<-n+1")], REAL),
    _row("T4_3F1", 6, _A4, _B4, [("a1", "(-n+1,-n+2)"), ("a2", "R<-n+1"), ("b", "R<a1-n+2 | R>0")], REAL),
] + [
    _row("T4_3F1", 7 + i, _A4, _B4, spec, _SPECIAL_3F1_EXPECT[i], guards=_SPECIAL_3F1_GUARDS[i], min_n=4)
    for i, spec in enumerate(_SPECIAL_3F1)
]

# Tables 5-8: 3F2(-n, a1, a2; b1, b2)
_A5, _B5 = ["a1", "a2"], ["b1", "b2"]
T5 = [
    _row("T5_3F2", 1, _A5, _B5, [("b1", "R>0"), ("b2", "R>0"), ("a1", "R<-n+1"), ("a2", "R>min(b1,b2)+n-2")], NEG),
    _row("T5_3F2", 2, _A5, _B5, [("b1", "R>0"), ("b2", "R>0"), ("a1", "R>b1+n-2"), ("a2", "R>b2+n-2")], POS),
    _row("T5_3F2", 3, _A5, _B5, [("b1", "R>0"), ("b2", "R>0"), ("a1", "R<-n+1"), ("a2", "R<-n+1")], POS),
    _row("T5_3F2", 4, _A5, _B5, [("a1", "R<-n+1"), ("a2", "R<-n+1"), ("b1", "R>0"), ("b2", "R<min(a1,a2)-n+2")], NEG),
    _row("T5_3F2", 5, _A5, _B5, [("a1", "R<-n+1"), ("a2", "R<-n+1"), ("b1", "R<a1-n+2"), ("b2", "R<a2-n+2")], POS),
    _row("T5_3F2", 6, _A5, _B5, [("a1", "R<-n+1"), ("b2", "R>0"), ("a2", "R>b2+n-2"), ("b1", "R<a1-n+2")], POS),
]


def _rename(spec, mapping):
    return [(mapping.get(name, name), _subst(src, mapping)) for name, src in spec]


def _subst(src: str, mapping: dict) -> str:
    import re

    return re.sub(r"\b(" + "|".join(map(re.escape, mapping)) + r")\b", lambda m: mapping[m.group(1)], src)


_T6_EXPECT = [NEG, NEG, NEG, NEG, REAL, REAL, REAL, REAL]
T6 = [
    _row("T6_3F2", 1 + i, _A5, _B5, [("a2", "R<-n+1")] + _rename(spec, {"a": "a1"}), _T6_EXPECT[i],
         guards=_SPECIAL_GUARDS[i], min_n=4)
    for i, spec in enumerate(_SPECIAL_2F2)
]

T7 = [
    _row("T7_3F2", 1 + i, _A5, _B5, [("b2", "R>0")] + _rename(spec, {"b": "b1"}), _SPECIAL_3F1_EXPECT[i],
         guards=_SPECIAL_3F1_GUARDS[i], min_n=4)
    for i, spec in enumerate(_SPECIAL_3F1)
]

T8 = [
    _row("T8_extra", 1, _A5, _B5, [("b1", "(0,2)"), ("b2", "=2-b1"), ("a2", "=1/2"), ("a1", "R>2*n-1")], POS),
    _row("T8_extra", 2, _A5, _B5, [("b1", "R>0"), ("b2", "=2*b1-1"), ("a2", "=b1-1/2"), ("a1", "R>2*(b1+n-1)")], POS),
    _row("T8_extra", 3, _A5, _B5, [("b1", "R>0"), ("b2", "=2*b1-1"), ("a2", "=b1-1/2"), ("a1", "R<-n+1")], NEG),
    _row("T8_extra", 4, _A5, _B5, [("b1", "R>1"), ("b2", "=2*b1-2"), ("a2", "=b1-1/2"), ("a1", "R>2*(b1+n)-3")], POS),
    _row("T8_extra", 5, _A5, _B5, [("b1", "R>1"), ("b2", "=2*b1-2"), ("a2", "=b1-1/2"), ("a1", "R<-n+1")], NEG),
]

# regions of 2F2(-n, a; b1, b2) where real-rootedness must fail
EXCLUDED = [
    _row("EX_2F2", 1, _A3, _B3,
         [("b1", "R<-n+1"), ("b2", "R<-n+1"), ("a", "R>0 | R<max(b1-n+2, b2-n+2)")], NOTREAL),
    _row("EX_2F2", 2, _A3, _B3, [("b1", "R<-n+1"), ("a", "R>0"), ("b2", "R>a+n-2")], NOTREAL),
]

TABLES = {
    "T1_1F1": T1,
    "T2_2F1": T2,
    "T3_2F2": T3,
    "T4_3F1": T4,
    "T5_3F2": T5,
    "T6_3F2": T6,
    "T7_3F2": T7,
    "T8_extra": T8,
}

ALL_ROWS = [r for rows in TABLES.values() for r in rows]


def get_row(table: str, row: int) -> Row:
    rows = TABLES.get(table) or (EXCLUDED if table == "EX_2F2" else None)
    if rows is None:
        raise KeyError(f"unknown table {table!r}")
    for r in rows:
        if r.row == row:
            return r
    raise KeyError(f"{table} has no row {row}")


def registry_hash() -> str:
    """sha256 over the canonical JSON of every row (tables and exclusions)."""
    blob = json.dumps([r.to_json() for r in ALL_ROWS + EXCLUDED], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()
