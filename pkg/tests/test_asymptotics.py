import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from finfree.asymptotics import (FREE_IDENTITIES, LimitMeasure, MeasureKind, UnsupportedParameters,
                                 bessel_bessel_rhs, convergence_report, displayed_jacobi_density, empirical,
                                 empirical_moments, free_identity_check, histogram, limit_density, limit_moment,
                                 narayana_mp_moment, total_mass)
from finfree.convolution import add_convolve
from finfree.hypergeo import hgp_monic, laguerre_hat, pfq_std
from finfree.poly import dilate, from_coeffs, power_linear

MEASURES = [
    LimitMeasure.mp(2), LimitMeasure.mp(F(1, 2)), LimitMeasure.rmp(-3),
    LimitMeasure.jacobi(2, 4), LimitMeasure.jacobi(2, -3), LimitMeasure.jacobi(-5, -3),
]


# limit measures


def test_mp_support():
    m = LimitMeasure.mp(2)
    assert m.lo == pytest.approx(3 - 2 * math.sqrt(2), abs=1e-15)
    assert m.hi == pytest.approx(3 + 2 * math.sqrt(2), abs=1e-15)
    assert limit_density(m, 0.1) == 0.0 and limit_density(m, 6.0) == 0.0


@pytest.mark.parametrize("m", MEASURES, ids=lambda m: f"{m.kind.value}({m.b},{m.a})")
def test_total_mass_one(m):
    assert abs(total_mass(m) - 1) < 1e-8
    assert limit_moment(m, 0) == pytest.approx(1, abs=1e-8)


def test_jacobi_regimes():
    assert LimitMeasure.jacobi(2, 4).kind is MeasureKind.J1
    assert LimitMeasure.jacobi(2, -3).kind is MeasureKind.J2
    assert LimitMeasure.jacobi(-5, -3).kind is MeasureKind.J3
    with pytest.raises(UnsupportedParameters):
        LimitMeasure.jacobi(F(1, 2), 4)
    with pytest.raises(UnsupportedParameters):
        LimitMeasure.rmp(1)
    with pytest.raises(UnsupportedParameters):
        LimitMeasure.mp(0)


def test_mp_atom():
    b = F(1, 3)
    m = LimitMeasure.mp(b)
    assert m.atom == pytest.approx(2 / 3)
    cont = total_mass(m) - m.atom
    assert abs(cont - float(b)) < 1e-8


def test_narayana_values():
    assert [narayana_mp_moment(2, k) for k in range(4)] == [1, 2, 6, 22]
    m = LimitMeasure.mp(2)
    for k, want in [(1, 2), (2, 6), (3, 22)]:
        assert abs(limit_moment(m, k) - want) < 1e-8


@settings(max_examples=25)
@given(st.fractions(F(1, 4), 6, max_denominator=8), st.integers(1, 5))
def test_quadrature_matches_narayana(b, k):
    m = LimitMeasure.mp(b)
    assert limit_moment(m, k) == pytest.approx(float(narayana_mp_moment(b, k)), rel=1e-9)


def test_quadrature_against_plain_scipy():
    # independent oracle: scipy quad on the raw density, no substitution
    m = LimitMeasure.rmp(-3)
    raw, _ = quad(lambda x: x * m.density(x), m.lo, m.hi, limit=200, epsabs=1e-12)
    assert abs(limit_moment(m, 1) - raw) < 1e-8


def test_rmp_is_pushforward_of_mp():
    # with the negative support r+-, RMP(a) is the image of MP(1 - a) under x -> -1/x
    a = -3
    r, mp = LimitMeasure.rmp(a), LimitMeasure.mp(1 - a)
    assert r.hi < 0
    assert r.lo == pytest.approx(-1 / mp.lo) and r.hi == pytest.approx(-1 / mp.hi)
    for k in (1, 2, 3):
        assert abs(limit_moment(r, k) - (-1) ** k * limit_moment_inverse(mp, k)) < 1e-8


def limit_moment_inverse(m, k):
    v, _ = quad(lambda x: x ** -k * m.density(x), m.lo, m.hi, limit=200, epsabs=1e-13)
    return v


@pytest.mark.parametrize("m", MEASURES[:1] + MEASURES[2:], ids=lambda m: m.kind.value)
def test_density_vanishes_at_endpoints(m):
    # square-root vanishing: shrinking the offset by 10^4 shrinks the density by ~10^2
    L = m.hi - m.lo
    for edge, sgn in ((m.lo, 1), (m.hi, -1)):
        d4, d8 = (limit_density(m, edge + sgn * e * L) for e in (1e-4, 1e-8))
        assert d4 > 0
        assert d8 / d4 == pytest.approx(1e-2, rel=0.05)
    assert limit_density(m, m.lo + 0.5 * L) > 0


def test_printed_jacobi_densities_are_not_probability_densities():
    for b, a in [(2, 4), (2, -3), (-5, -3)]:
        m = LimitMeasure.jacobi(b, a)
        mass, _ = quad(lambda x: displayed_jacobi_density(b, a, x), m.lo, m.hi, limit=200)
        assert abs(mass - 1) > 0.1, (b, a, mass)
    m = LimitMeasure.jacobi(2, 4)
    mass, _ = quad(lambda x: displayed_jacobi_density(2, 4, x), m.lo, m.hi, limit=200)
    assert mass == pytest.approx(0.5, abs=1e-8)


# empirical side


def test_empirical_examples():
    mom, bnd = empirical_moments(power_linear(6, 1, -1), 4)
    assert mom == [1.0] * 5
    mom, _ = empirical_moments(from_coeffs([-2, 0, 1]), 2)
    assert mom[1] == pytest.approx(0, abs=1e-15) and mom[2] == pytest.approx(2, rel=1e-15)


def test_empirical_rejects_nonreal():
    with pytest.raises(ValueError):
        empirical_moments(from_coeffs([1, 0, 1]), 2)


def test_bound_covers_error():
    p = from_coeffs([-2, 0, 1])
    w = F(1, 2 ** 20)
    mom, bnd = empirical_moments(p, 4, width=w)
    assert abs(mom[2] - 2) <= bnd[2]
    assert abs(mom[4] - 4) <= bnd[4]


def test_first_moment_is_exact_ratio():
    for n, a, b in [(7, [F(-9)], [F(2)]), (10, [], [F(3)]), (9, [F(-13), F(-12)], [F(5, 2)])]:
        p = pfq_std(n, a, b)
        want = float(p.e[1] / (n * p.e[0]))
        mom, _ = empirical_moments(p, 1)
        assert mom[1] == pytest.approx(want, rel=1e-14)


def test_laguerre_hat_first_moment_is_b():
    # e1/(n e0) of Dil_{1/n} H[b; -] is b at every n
    for n in (10, 20, 40):
        p = laguerre_hat(n, F(7, 3))
        assert p.e[1] / (n * p.e[0]) == F(7, 3)
        assert empirical(p).moment(1) == pytest.approx(7 / 3, rel=1e-14)


def test_histogram_mass():
    m = LimitMeasure.mp(2)
    h = histogram(laguerre_hat(60, 2), m, bins=20)
    assert len(h) == 20
    assert sum(c for _, c, _ in h) == pytest.approx(1, abs=0.05)


# reports


def test_convergence_report_small():
    rep = convergence_report("laguerre", {"b": 2}, n_list=(10, 20, 40), kmax=3)
    assert rep.n_values == [10, 20, 40]
    assert rep.monotone and not rep.skipped
    assert rep.max_error(40) < rep.max_error(10)


def test_convergence_report_skips_nonreal(monkeypatch):
    import finfree.asymptotics as asy

    def build(n, P):
        return from_coeffs([1, 0, 1]) if n == 8 else laguerre_hat(n, P["b"])

    monkeypatch.setitem(asy.FAMILIES, "laguerre", (build, asy.FAMILIES["laguerre"][1]))
    rep = convergence_report("laguerre", {"b": 2}, n_list=(8, 16), kmax=2)
    assert [n for n, _ in rep.skipped] == [8]
    assert rep.n_values == [16]


def test_convergence_report_unsupported():
    with pytest.raises(UnsupportedParameters):
        convergence_report("laguerre", {"b": F(-3, 2)}, n_list=(8,), kmax=2)


def test_free_identities_exact_small():
    cases = {
        "FBetaQuotient": {"c": 2, "d": 3},
        "MPMP_E37": {"b1": 2, "b2": F(7, 2)},
        "Clausen_E39": {"a": F(3, 2), "b": 2},
        "BesselBessel_E311": {"a": -4, "b": -5},
    }
    assert set(cases) == set(FREE_IDENTITIES)
    for ident, P in cases.items():
        rep = free_identity_check(ident, P, n_list=(6, 8, 10), moment_n=30, kmax=3)
        assert rep.all_exact, ident
        assert rep.max_side_error() < 0.05, ident


def test_free_identity_preconditions():
    with pytest.raises(UnsupportedParameters):
        free_identity_check("MPMP_E37", {"b1": -1, "b2": 2}, moment_n=0)
    with pytest.raises(UnsupportedParameters):
        free_identity_check("BesselBessel_E311", {"a": 1, "b": -2}, moment_n=0)


def test_printed_bessel_bessel_form_fails():
    for n in (6, 8, 10):
        lhs = add_convolve(hgp_monic(n, [], [-8]), hgp_monic(n, [], [-10]))
        assert lhs == bessel_bessel_rhs(n, -4, -5)
        assert lhs != bessel_bessel_rhs(n, -4, -5, offset_sign=-1)


def test_dilation_preserves_exactness():
    n = 6
    lhs = add_convolve(hgp_monic(n, [], [-8]), hgp_monic(n, [], [-10]))
    assert dilate(lhs, F(1, 3)) == dilate(bessel_bessel_rhs(n, -4, -5), F(1, 3))
