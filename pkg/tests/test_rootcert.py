import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rand_q, rand_rooted, rooted
from finfree.convolution import add_convolve, mul_convolve
from finfree.hypergeo import pfq_std
from finfree.poly import Poly, dilate, from_coeffs, from_roots, lift, negate_argument
from finfree.rootcert import (CertificationError, Claim, Enclosure, Interlacing, certify, classify, decide_ge,
                              implies, interlaces, interlacing, joint_roots, lmesh, mesh)


# reference examples


def test_triple_root():
    cert = certify(from_roots([1, 1, 1]))
    assert cert.nonreal_count == 0
    assert len(cert.roots) == 1 and cert.roots[0].mult == 3
    assert cert.roots[0].point == 1


def test_no_real_roots():
    cert = certify(from_coeffs([1, 0, 1]))
    assert cert.nonreal_count == 2 and cert.roots == ()
    assert classify(from_coeffs([1, 0, 1])) is Claim.NOT_ALL_REAL


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        certify(Poly.zero(3))


def test_standard_laguerre_roots():
    cert = certify(pfq_std(5, [], [1]))
    assert cert.all_real and len(cert.roots) == 5
    assert all(r.mult == 1 for r in cert.roots)
    assert cert.satisfies(Claim.ALL_POS)


def test_classify_examples():
    assert classify(pfq_std(5, [-9], [])) is Claim.ALL_NEG
    # the table claim is non-positive; with b not in -Z_n the strongest class is AllNeg
    c = classify(pfq_std(5, [-8], [2]))
    assert c is Claim.ALL_NEG and implies(c, Claim.ALL_NONPOS)
    assert classify(from_roots([F(1, 3), F(1, 2)])) is Claim.IN_UNIT_INTERVAL
    assert classify(from_roots([0, 2])) is Claim.ALL_NONNEG
    assert classify(from_roots([-1, 2])) is Claim.ALL_REAL


def test_claim_lattice():
    assert implies(Claim.IN_UNIT_INTERVAL, Claim.ALL_REAL)
    assert implies(Claim.ALL_POS, Claim.ALL_NONNEG)
    assert not implies(Claim.ALL_NONNEG, Claim.ALL_POS)
    assert not implies(Claim.NOT_ALL_REAL, Claim.ALL_REAL)


def test_certificate_invariants():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 9)
        p = Poly(n, tuple(rand_q(rng, 9, 4) for _ in range(n + 1)))
        if p.is_zero():
            continue
        cert = certify(p)
        assert cert.real_count + cert.nonreal_count == p.degree
        for a, b in zip(cert.roots, cert.roots[1:]):
            # open intervals may share a non-root endpoint; points must differ
            assert a.hi <= b.lo and not (a.is_exact and b.is_exact and a.lo == b.lo)


def test_refine_width():
    cert = certify(from_coeffs([-2, 0, 1])).refine(F(1, 2 ** 30))
    for r in cert.roots:
        assert r.width <= F(1, 2 ** 30)
        lo, hi = sorted((abs(r.lo), abs(r.hi)))
        assert lo ** 2 < 2 < hi ** 2


def test_multiplicities_at_special_points():
    p = from_roots([0, 0, 1, 1, 1, -1, F(5, 2)])
    cert = certify(p)
    assert cert.multiplicity_at(0) == 2
    assert cert.multiplicity_at(1) == 3
    assert cert.multiplicity_at(-1) == 1
    assert cert.multiplicity_at(2) == 0


def test_sign_change_route_agrees_with_sturm():
    p = from_roots([F(k, 3) for k in range(-6, 7)])
    a, b = certify(p, method="sturm"), certify(p, method="sign-change")
    assert len(a.roots) == len(b.roots) == 13
    for ra, rb in zip(a.roots, b.roots):
        assert ra.lo <= rb.hi and rb.lo <= ra.hi


# interlacing


def test_interlacing_examples():
    p, q = from_roots([1, 3]), from_roots([2])
    assert interlacing(p, q) == {Interlacing.P_PRECCURLY_Q, Interlacing.P_PREC_Q}
    assert interlacing(p, p) == {Interlacing.P_PRECCURLY_Q, Interlacing.Q_PRECCURLY_P}
    n, b, t = 6, 2, 1
    assert interlaces(pfq_std(n, [], [b]), pfq_std(n, [], [b + t]))


def test_interlacing_weak_vs_strict():
    p, q = from_roots([1, 2, 4]), from_roots([2, 3, 5])
    rel = interlacing(p, q)
    assert Interlacing.P_PRECCURLY_Q in rel and Interlacing.P_PREC_Q not in rel


def test_interlacing_neither():
    assert interlacing(from_roots([0, 1]), from_roots([3, 4])) == {Interlacing.NEITHER}


def test_interlacing_errors():
    with pytest.raises(ValueError):
        interlacing(from_roots([1, 2, 3]), from_roots([1]))
    with pytest.raises(CertificationError):
        interlacing(from_coeffs([1, 0, 1]), from_roots([1, 2]))


def test_equal_roots_decided_exactly():
    # a root shared up to 2^-80 is not a shared root
    eps = F(1, 2 ** 80)
    p, q = from_roots([1, 3]), from_roots([1 + eps, 3])
    jr = joint_roots([p, q])
    assert len(jr) == 3
    assert interlaces(p, q, strict=False) and not interlaces(q, p)


def _interlacing_pair(rng, n, lo=-6, hi=6):
    """(p, p~) with p weakly interlacing p~ (ascending: r1 <= s1 <= r2 <= ...)."""
    pts = sorted(F(rng.randint(lo * 8, hi * 8), 8) for _ in range(2 * n))
    return from_roots(pts[0::2]), from_roots(pts[1::2])


def test_hko_interlacing_pairs_real_combinations():
    rng = random.Random(5)
    for i in range(50):
        n = 2 + i % 5
        p, q = _interlacing_pair(rng, n)
        assert interlaces(p, q)
        a, b = rand_q(rng, 9, 5), rand_q(rng, 9, 5)
        r = p.scale(a) + q.scale(b)
        if not r.is_zero():
            assert certify(r).all_real


def test_hko_neither_pairs_have_nonreal_combination():
    rng = random.Random(6)
    found = 0
    for i in range(20):
        n = 2 + i % 4
        while True:
            p, q = rand_rooted(rng, n), rand_rooted(rng, n)
            if interlacing(p, q) == {Interlacing.NEITHER}:
                break
        # t ranges over +-[1/4, 20]; mixing in both orders reaches large ratios too
        ts = [F(s * k, 4) for k in range(1, 81) for s in (1, -1)]
        combos = [p + q.scale(t) for t in ts] + [q + p.scale(t) for t in ts]
        if any(not certify(r).all_real for r in combos if not r.is_zero()):
            found += 1
    assert found == 20


# preservation of interlacing, mesh and lmesh


def test_add_preserves_interlacing():
    rng = random.Random(7)
    for i in range(50):
        n = 2 + i % 5
        p, pt = _interlacing_pair(rng, n)
        q = rand_rooted(rng, n, distinct=False)
        assert interlaces(add_convolve(p, q), add_convolve(pt, q))


def test_mul_nonneg_preserves_interlacing():
    rng = random.Random(8)
    for i in range(50):
        n = 2 + i % 5
        p, pt = _interlacing_pair(rng, n)
        q = rand_rooted(rng, n, lo=0, hi=6, distinct=False)
        assert interlaces(mul_convolve(p, q), mul_convolve(pt, q))


def test_mul_nonpos_reverses_interlacing():
    rng = random.Random(9)
    for i in range(50):
        n = 2 + i % 5
        p, pt = _interlacing_pair(rng, n)
        q = rand_rooted(rng, n, lo=-6, hi=0, distinct=False)
        assert interlaces(mul_convolve(pt, q), mul_convolve(p, q))


def _enc(fn, p):
    return lambda w: fn(p, w)


def test_mesh_preserved_by_add():
    rng = random.Random(10)
    for i in range(50):
        n = 2 + i % 5
        p, q = rand_rooted(rng, n), rand_rooted(rng, n, distinct=False)
        r = add_convolve(p, q)
        assert decide_ge(_enc(mesh, r), _enc(mesh, p)) is True


def test_lmesh_preserved_by_mul():
    rng = random.Random(11)
    for i in range(50):
        n = 2 + i % 5
        p, q = rand_rooted(rng, n, lo=1, hi=9), rand_rooted(rng, n, lo=1, hi=9, distinct=False)
        r = mul_convolve(p, q)
        assert decide_ge(_enc(lmesh, r), _enc(lmesh, p)) is True


@settings(max_examples=30)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(rooted(n, distinct=True), rooted(n))))
def test_mesh_property(pq):
    p, q = pq
    assert decide_ge(_enc(mesh, add_convolve(p, q)), _enc(mesh, p)) is True


# mesh and lmesh values


def test_mesh_examples():
    p = from_roots([1, 2, 4])
    assert mesh(p) == Enclosure(F(1), F(1))
    assert lmesh(p) == Enclosure(F(2), F(2))
    assert mesh(from_roots([1] * 5)).hi == 0


def test_mesh_irrational_enclosure():
    p = from_coeffs([-2, 0, 1])  # roots +-sqrt 2
    e = mesh(p, F(1, 2 ** 40))
    assert not e.exact
    assert e.lo * e.lo <= 8 <= e.hi * e.hi
    assert e.hi - e.lo <= F(1, 2 ** 38)


def test_mesh_preconditions():
    with pytest.raises(ValueError, match="real-rooted"):
        mesh(from_coeffs([1, 0, 1]))
    with pytest.raises(ValueError, match="positive"):
        lmesh(from_roots([-1, 2]))
    with pytest.raises(ValueError):
        mesh(from_roots([3]))


def test_decide_ge_undecided_on_tie():
    one = lambda w: Enclosure(F(1) - w, F(1) + w)
    assert decide_ge(one, one, max_rounds=3) is None


# classify invariance


@given(rooted(5), st.fractions(F(1, 9), 9, max_denominator=9))
def test_classify_invariant_under_positive_dilation(p, s):
    assert classify(dilate(p, s)) == classify(p)


@given(rooted(4))
def test_negation_swaps_signs(p):
    swap = {Claim.ALL_POS: Claim.ALL_NEG, Claim.ALL_NEG: Claim.ALL_POS,
            Claim.ALL_NONNEG: Claim.ALL_NONPOS, Claim.ALL_NONPOS: Claim.ALL_NONNEG,
            Claim.IN_UNIT_INTERVAL: Claim.ALL_NEG}
    c, d = classify(p), classify(negate_argument(p))
    if p == Poly.monomial(4):
        # only root 0: both sign classes hold, the first one listed wins
        assert c == d == Claim.ALL_NONNEG
    else:
        assert d == swap.get(c, c)


def test_lifted_degree_uses_actual_degree():
    p = lift(from_roots([1, 2]), 5)
    assert certify(p).degree == 2
