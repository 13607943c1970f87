"""Command line: ``finfree <verb> ...``.

Exit codes: 0 when every verdict passes, 1 on any failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from fractions import Fraction

from . import __version__
from .asymptotics import (FAMILIES as ASYM_FAMILIES, FREE_IDENTITIES, UnsupportedParameters,
                          convergence_report, free_identity_check, histogram)
from .convolution import add_convolve, compare_add_routes, mul_convolve
from .hypergeo import DegenerateParameters, hgp_monic, pfq_std
from .identities import IDENTITIES, PreconditionError, verify_identity
from .poly import Poly, as_fraction, fraction_str
from .rootcert import CertificationError, certify
from .regions import TABLES, check_table, registry_hash
from .regions.harness import sweep_excluded


class UsageError(Exception):
    def __init__(self, flag: str, msg: str):
        super().__init__(f"{flag}: {msg}")


# parsing helpers


def _rational(flag, s) -> Fraction:
    try:
        return as_fraction(str(s))
    except (ValueError, ZeroDivisionError, TypeError):
        raise UsageError(flag, f"not a rational: {s!r}") from None


def _rational_list(flag, s) -> list[Fraction]:
    if s is None or not s.strip() or s.strip() == "-":
        return []
    return [_rational(flag, x) for x in s.split(",")]


def _int_list(flag, s) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise UsageError(flag, f"expected comma separated integers, got {s!r}") from None


def _load_json(flag, s):
    """Inline JSON, ``-`` for stdin, or a file path."""
    try:
        if s == "-":
            return json.load(sys.stdin)
        if s.lstrip().startswith(("{", "[")):
            return json.loads(s)
        with open(s) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(flag, str(exc)) from None
    except json.JSONDecodeError as exc:
        raise UsageError(flag, f"malformed JSON ({exc})") from None


def _poly(flag, s) -> Poly:
    try:
        return Poly.from_json(_load_json(flag, s))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(flag, f"not a polynomial: {exc}") from None


def _params(flag, s) -> dict:
    """``b=2,a=7/2`` or a JSON object."""
    if s is None:
        return {}
    if s.lstrip().startswith("{"):
        obj = _load_json(flag, s)
        if not isinstance(obj, dict):
            raise UsageError(flag, "expected a JSON object")
        return {k: _rational(flag, v) for k, v in obj.items()}
    out = {}
    for item in s.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise UsageError(flag, f"expected name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = _rational(flag, v)
    return out


def _params_json(params: dict) -> str:
    def conv(v):
        if isinstance(v, (list, tuple)):
            return [conv(x) for x in v]
        return fraction_str(as_fraction(v))

    return json.dumps({k: conv(v) for k, v in params.items()}, sort_keys=True, separators=(",", ":"))


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _g(x) -> str:
    return "" if x is None else f"{x:.17g}"


# verbs


def cmd_convolve(args) -> int:
    p, q = _poly("--p", args.p), _poly("--q", args.q)
    if p.n != q.n:
        raise UsageError("--q", f"ambient degrees differ ({p.n} vs {q.n})")
    if args.oracle and args.op != "add":
        raise UsageError("--oracle", "the route comparison applies to --op add")
    if args.op == "mul":
        _emit(mul_convolve(p, q).dumps() + "\n", args.out)
        return 0
    if not args.oracle:
        _emit(add_convolve(p, q).dumps() + "\n", args.out)
        return 0
    rep = compare_add_routes(p, q)
    doc = {
        "result": rep.results["coefficients"].to_json(),
        "routes": sorted(rep.results),
        "agree": rep.agree,
        "first_mismatch": None if rep.agree else {"route": rep.first_mismatch[0], "k": rep.first_mismatch[1]},
    }
    _emit(json.dumps(doc) + "\n", args.out)
    return 0 if rep.agree else 1


def cmd_hgp(args) -> int:
    a, b = _rational_list("--a", args.a), _rational_list("--b", args.b)
    try:
        p = pfq_std(args.n, a, b) if args.norm == "std" else hgp_monic(args.n, b, a)
    except DegenerateParameters as exc:
        raise UsageError("--a" if args.norm == "monic" else "--b", str(exc)) from None
    _emit(p.dumps() + "\n", args.out)
    return 0


def cmd_roots(args) -> int:
    p = _poly("--p", args.p)
    if p.is_zero():
        raise UsageError("--p", "the zero polynomial has no root certificate")
    cert = certify(p)
    if args.refine is not None:
        w = _rational("--refine", args.refine)
        if w <= 0:
            raise UsageError("--refine", "width must be positive")
        cert = cert.refine(w)
    _emit(json.dumps(cert.to_json()) + "\n", args.out)
    return 0


def _grid_cases(grid, default_identity):
    """Expand a grid document into (identity, n, params) triples.

    A block is {"identity": id, "n": int | [int], "params": {name: value}};
    a list-valued parameter is swept, so tuple parameters are written as a
    list of lists.  The document is one block, a list of blocks, or
    {"cases": [blocks]}.
    """
    if isinstance(grid, dict) and "cases" in grid:
        grid = grid["cases"]
    blocks = grid if isinstance(grid, list) else [grid]
    for blk in blocks:
        if not isinstance(blk, dict):
            raise UsageError("--grid", "each block must be a JSON object")
        ident = blk.get("identity", default_identity)
        if ident is None:
            raise UsageError("--grid", "block without identity and no --identity given")
        if ident not in IDENTITIES:
            raise UsageError("--grid", f"unknown identity {ident!r}")
        ns = blk.get("n")
        if ns is None:
            raise UsageError("--grid", "block without n")
        ns = ns if isinstance(ns, list) else [ns]
        params = blk.get("params", {})
        names = sorted(params)
        axes = [params[k] if isinstance(params[k], list) else [params[k]] for k in names]
        for n in ns:
            for combo in itertools.product(*axes):
                yield ident, int(n), dict(zip(names, combo))


def cmd_verify(args) -> int:
    if args.grid is None:
        if args.identity is None:
            raise UsageError("--identity", "give --identity with --n/--params, or --grid")
        if args.n is None:
            raise UsageError("--n", "required without --grid")
        grid = {"identity": args.identity, "n": args.n, "params": {k: str(v) for k, v in _params("--params", args.params).items()}}
    else:
        grid = _load_json("--grid", args.grid)
    if args.identity is not None and args.identity not in IDENTITIES:
        raise UsageError("--identity", f"unknown identity {args.identity!r}")
    rows, ok = [], True
    for ident, n, params in _grid_cases(grid, args.identity):
        try:
            rep = verify_identity(ident, params, n)
            status, k = rep.status, rep.first_mismatch_k
            pj = _params_json(rep.params)
        except (PreconditionError, DegenerateParameters) as exc:
            status, k = "INVALID", None
            pj = _params_json({kk: v for kk, v in params.items()})
            print(f"{ident} n={n}: {exc}", file=sys.stderr)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise UsageError("--grid", f"bad parameters {params}: {exc}") from None
        ok &= status == "PASS"
        rows.append((ident, pj, n, status, "" if k is None else k))
    _emit(_csv(("identity", "params", "n", "status", "first_mismatch_k"), rows), args.out)
    return 0 if ok else 1


def _table_id(flag, name: str) -> str:
    if name in TABLES or name == "EX_2F2":
        return name
    hits = [t for t in list(TABLES) + ["EX_2F2"] if t.split("_")[0] == name]
    if len(hits) != 1:
        raise UsageError(flag, f"unknown table {name!r}")
    return hits[0]


def cmd_check_table(args) -> int:
    cfg = _load_json("--config", args.config) if args.config else {}
    if not isinstance(cfg, dict):
        raise UsageError("--config", "expected a JSON object")
    tables = cfg.get("tables") or ([args.table] if args.table else None)
    if not tables:
        raise UsageError("--table", "required (or 'tables' in --config)")
    tables = [_table_id("--table", t) for t in tables]
    n_list = cfg.get("n_list") or _int_list("--n", args.n)
    samples = int(cfg.get("samples", args.samples))
    seed = cfg.get("seed", args.seed)
    out = cfg.get("out", args.out)
    rows_sel = cfg.get("rows") or ([args.row] if args.row is not None else None)
    verdicts = []
    for t in tables:
        if t == "EX_2F2":
            vs = sweep_excluded(tuple(n_list), samples, seed)
            if rows_sel:
                vs = [v for v in vs if v.row in rows_sel]
            verdicts += vs
        else:
            rows = TABLES[t]
            if rows_sel and not any(r.row in rows_sel for r in rows):
                raise UsageError("--row", f"{t} has no row {rows_sel}")
            verdicts += check_table(t, tuple(n_list), samples, seed, rows_sel)
    body = _csv(("table", "row", "n", "params", "expected", "certified", "status"),
                [(v.table, v.row, v.n, _params_json(v.params), v.expected, v.certified, v.status) for v in verdicts])
    _emit(body, out)
    return 0 if all(v.passed for v in verdicts) else 1


def cmd_asymptotics(args) -> int:
    params = _params("--params", args.params)
    n_list = _int_list("--n", args.n)
    fam = args.family
    if fam.startswith("identity:"):
        ident = fam.split(":", 1)[1]
        if ident not in FREE_IDENTITIES:
            raise UsageError("--family", f"unknown identity {ident!r}")
        rows, ok = [], True
        try:
            for n in n_list:
                rep = free_identity_check(ident, params, n_list=(6, 8, 10) if not rows else (),
                                          moment_n=n, kmax=args.kmax)
                ok &= rep.all_exact
                # limit column: the right-hand side's empirical moment
                rows += [(r[0], r[1], _g(r[2]), _g(r[3]), _g(r[4])) for r in rep.rows]
        except (UnsupportedParameters, KeyError) as exc:
            raise UsageError("--params", str(exc)) from None
        _emit(_csv(("n", "k", "empirical", "limit", "rel_err"), rows), args.out)
        return 0 if ok else 1
    if fam not in ASYM_FAMILIES:
        raise UsageError("--family", f"unknown family {fam!r}")
    try:
        rep = convergence_report(fam, params, n_list, args.kmax)
    except (UnsupportedParameters, KeyError) as exc:
        raise UsageError("--params", str(exc)) from None
    _emit(_csv(("n", "k", "empirical", "limit", "rel_err"),
               [(n, k, _g(e), _g(l), _g(r)) for n, k, e, l, r in rep.rows]), args.out)
    if args.emit_hist:
        n = max(n_list)
        build, _ = ASYM_FAMILIES[fam]
        hist = histogram(build(n, {k: as_fraction(v) for k, v in params.items()}), rep.measure, args.bins)
        _emit(_csv(("bin_center", "empirical_mass", "limit_density"),
                   [(_g(c), _g(m), _g(d)) for c, m, d in hist]), args.emit_hist)
    for n, why in rep.skipped:
        print(f"n={n} skipped: {why}", file=sys.stderr)
    return 0 if rep.monotone and not rep.skipped else 1


# parser


class _Version(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        print(f"finfree {__version__} registry {registry_hash()}")
        parser.exit(0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="finfree", description="Exact finite free convolutions of hypergeometric polynomials.")
    ap.add_argument("--version", action=_Version, nargs=0, help="print version and registry hash")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("convolve", help="p [+]_n q or p [x]_n q")
    p.add_argument("--op", choices=("add", "mul"), required=True)
    p.add_argument("--p", required=True, help="Poly JSON, file path or '-'")
    p.add_argument("--q", required=True)
    p.add_argument("--oracle", choices=("all",))
    p.add_argument("--out")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("hgp", help="hypergeometric polynomial as Poly JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", default="", help="numerator parameters, comma separated")
    p.add_argument("--b", default="", help="denominator parameters")
    p.add_argument("--norm", choices=("std", "monic"), default="std")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hgp)

    p = sub.add_parser("roots", help="exact root certificate")
    p.add_argument("--p", required=True)
    p.add_argument("--refine", help="isolating interval width (rational)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("verify", help="check identities over a parameter grid")
    p.add_argument("--identity", help=", ".join(IDENTITIES))
    p.add_argument("--grid")
    p.add_argument("--n", type=int)
    p.add_argument("--params")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-table", help="sample and certify table rows")
    p.add_argument("--table")
    p.add_argument("--row", type=int)
    p.add_argument("--n", default="5,8,12")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", default="0")
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check_table)

    p = sub.add_parser("asymptotics", help="moment convergence to the limit law")
    p.add_argument("--family", required=True, help="laguerre|bessel|jacobi|identity:<id>")
    p.add_argument("--params")
    p.add_argument("--n", default="50,100,200,400")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--bins", type=int, default=40)
    p.add_argument("--emit-hist")
    p.add_argument("--out")
    p.set_defaults(func=cmd_asymptotics)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"finfree {args.verb}: error: {exc}", file=sys.stderr)
        return 2
    except CertificationError as exc:
        print(f"finfree {args.verb}: certification failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
