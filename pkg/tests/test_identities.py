import random
from fractions import Fraction as F

import pytest

from conftest import rand_q, rand_spec
from finfree.convolution import add_convolve, mul_convolve
from finfree.hypergeo import DegenerateParameters, in_neg_zn, pfq_std, rising
from finfree.identities import (ADDITIVE_EXAMPLES, ADDITIVE_PARAMS, IDENTITIES, PreconditionError,
                                bessel_square_displayed_constant, compare, one_minus_x, operator_poly,
                                proportional, verify_additive_example, verify_bessel_square, verify_identity,
                                verify_mul_inverse, verify_mul_power, verify_mul_theorem, verify_reduction,
                                verify_summation_corollary, x_minus)
from finfree.poly import from_roots
from finfree.rootcert import certify


# multiplicative theorem


def test_mul_theorem_example():
    rep = verify_mul_theorem(8, [-9], [], [], [3])
    assert rep.passed and rep.first_mismatch_k is None


def test_mul_theorem_random():
    rng = random.Random(31)
    for _ in range(100):
        n = rng.randint(1, 12)
        a1, b1 = rand_spec(rng, n)
        a2, b2 = rand_spec(rng, n)
        assert verify_mul_theorem(n, a1, b1, a2, b2).passed


def test_mul_theorem_unsigned_form_fails_for_odd_n():
    # without the (-1)^n the concatenation identity only holds for even n
    for n in (3, 5, 7):
        a1, b2 = [F(-9)], [F(3)]
        lhs = mul_convolve(pfq_std(n, a1, []), pfq_std(n, [], b2))
        rhs = pfq_std(n, a1, b2)
        assert lhs == rhs.scale(-1) and lhs != rhs
    n = 4
    assert mul_convolve(pfq_std(n, [F(1, 2)], []), pfq_std(n, [], [F(7, 3)])) == pfq_std(n, [F(1, 2)], [F(7, 3)])


def test_mul_power_odd():
    assert verify_mul_power(4, [F(2, 3)], [F(-5, 2)], 2).passed
    assert verify_mul_power(3, [F(2, 3)], [F(-5, 2)], 4).passed


def test_mul_cancellation():
    rep = verify_mul_inverse(6, [-7], [2])
    assert rep.passed
    # the product is a constant multiple of (1-x)^n
    lhs = mul_convolve(pfq_std(6, [-7], [2]), pfq_std(6, [2], [-7]))
    assert proportional(lhs, one_minus_x(6))


def test_mul_power():
    assert verify_mul_power(5, [F(-7, 2)], [F(1, 3)], 3).passed


# additive examples


def test_e37_small_n_by_hand():
    b1, b2 = F(2, 3), F(-5, 4)
    rep = verify_additive_example("E37", {"b1": b1, "b2": b2}, 1)
    assert rep.passed
    # 1F1(-1; b) = b - x, and [+]_1 adds roots: -(b1 - x)(b2 - x)... up to the constant
    assert proportional(rep.lhs, from_roots([b1 + b2]))


def test_e37_reference_point():
    rep = verify_additive_example("E37", {"b1": 2, "b2": F(7, 2)}, 9)
    assert rep.passed and rep.routes_agree


def test_e311_square_reference_point():
    assert verify_bessel_square(7, -10).passed


def test_e311_square_printed_constant_is_off():
    # printed (-4)^n / (2a+n)_n misses the (a)_n from cancelling a
    for n, a in [(7, F(-10)), (5, F(3, 2)), (6, F(-7, 3))]:
        rep = verify_bessel_square(n, a)
        assert rep.passed
        used = F(-4) ** n * rising(a, n) / rising(2 * a + n, n)
        base = rep.rhs.scale(1 / used)
        lit = compare("E311_square", n, {"a": a}, rep.lhs, base, bessel_square_displayed_constant(n, a))
        assert lit.structural and not lit.constant_ok


@pytest.mark.parametrize("example", ADDITIVE_EXAMPLES)
def test_additive_examples_random(example):
    rng = random.Random(f"add-{example}")
    done = 0
    while done < 20:
        n = rng.randint(1, 12)
        P = {k: rand_q(rng) for k in ADDITIVE_PARAMS[example]}
        try:
            rep = verify_additive_example(example, P, n)
        except DegenerateParameters:
            continue
        assert rep.passed, (P, n, rep.first_mismatch_k)
        done += 1


def test_operator_route_skipped_on_lattice():
    rep = verify_additive_example("E38", {"a": -2, "b1": F(1, 2), "b2": F(3, 2)}, 5)
    assert rep.passed and rep.routes_agree is None


def test_e312_degenerate_denominator():
    with pytest.raises(DegenerateParameters):
        verify_additive_example("E312", {"c": F(1, 2), "d": 3}, 4)


def test_e312_zero_constant_means_zero_lhs():
    # (d - 1/2)_n = 0 makes the displayed constant vanish; the check then wants lhs = 0
    rep = verify_additive_example("E312", {"c": 3, "d": F(-1, 2)}, 4)
    assert rep.passed
    assert rep.lhs.is_zero()


def test_missing_parameter():
    with pytest.raises(PreconditionError):
        verify_additive_example("E38", {"a": 1}, 4)


def test_operator_poly_matches_closed_form():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 8)
        a, b = rand_spec(rng, n)
        assert operator_poly(n, a, b) == pfq_std(n, a, b)


def test_parity_rule_plain_convolution():
    # E37: both inputs are 1F1 (i+j = 1), so no argument sign change is needed
    n, b1, b2 = 6, F(5, 3), F(-2, 7)
    rep = verify_additive_example("E37", {"b1": b1, "b2": b2}, n)
    assert rep.lhs == add_convolve(pfq_std(n, [], [b1]), pfq_std(n, [], [b2]))


def test_summation_corollary_binomial():
    # (1-x)^-a (1-x)^-b = (1-x)^-(a+b) as 1F0 series
    for n in (3, 6):
        a, b = F(7, 3), F(-5, 2)
        rep = verify_summation_corollary(n, ([a], []), ([b], []), ([a + b], []))
        assert rep.passed


# reductions


def test_curious_reference_point():
    rep = verify_reduction("curious", {"b": 3}, 5)
    assert rep.passed
    # structural content: roots 1 (n-1 times) and b/(b+n)
    assert proportional(rep.lhs, x_minus(1, 4) * x_minus(F(3, 8), 1))


def test_reciprocal_reference_point():
    assert verify_reduction("reciprocal", {"a": [-6], "b": [2]}, 4).passed


def test_reduction2f1_root_at_one():
    rep = verify_reduction("reduction2F1", {"b": 3, "k": 2}, 6)
    assert rep.passed
    assert certify(rep.lhs).multiplicity_at(1) == 4


def test_reduction_side_conditions():
    with pytest.raises(PreconditionError):
        verify_reduction("2ndreduction2F1", {"b": -3, "k": 1}, 5)
    with pytest.raises(PreconditionError):
        verify_reduction("reduction2F1", {"b": 3, "k": 7}, 5)
    with pytest.raises(PreconditionError):
        verify_reduction("reduction2F14bis", {"k": 3, "j": 2}, 5)


def test_reduction2f14bis_all_pairs():
    n = 6
    for k in range(n + 1):
        for j in range(k, n + 1):
            assert verify_reduction("reduction2F14bis", {"k": k, "j": j}, n).passed


def test_reductions_random():
    rng = random.Random(41)
    for identity in ("2ndreduction2F1", "reduction2F1", "curious"):
        done = 0
        while done < 20:
            n = rng.randint(1, 12)
            P = {"b": rand_q(rng), "k": rng.randint(0, n - 1)}
            if identity == "curious":
                P.pop("k")
            try:
                rep = verify_reduction(identity, P, n)
            except PreconditionError:
                continue
            assert rep.passed, (identity, P, n)
            done += 1
    for _ in range(20):
        n = rng.randint(1, 10)
        a, b = rand_spec(rng, n, max_i=3, max_j=3)
        if any(in_neg_zn(-n - y + 1, n) for y in b):
            continue
        assert verify_reduction("reciprocal", {"a": a, "b": b}, n).passed


def test_curious_mul():
    p = from_roots([1, -2, F(1, 3), 4])
    assert verify_reduction("curious_mul", {"b": F(5, 2), "p": list(p.e)}, 4).passed


# dispatch


def test_dispatch_covers_everything():
    cases = {
        "mul_theorem": ({"a1": "-9", "b1": "", "a2": "", "b2": "3"}, 8),
        "mul_inverse": ({"a": "-7", "b": "2"}, 6),
        "mul_power": ({"a": "-7/2", "b": "1/3", "m": "3"}, 5),
        "E37": ({"b1": "2", "b2": "7/2"}, 9),
        "E38": ({"a": "1/3", "b1": "2", "b2": "5/4"}, 6),
        "E39": ({"a": "1/3", "b": "2"}, 6),
        "E311": ({"a": "-3", "b": "5/2"}, 6),
        "E311_square": ({"a": "-10"}, 7),
        "E312": ({"c": "3", "d": "5/3"}, 6),
        "2ndreduction2F1": ({"b": "3", "k": "2"}, 5),
        "reduction2F1": ({"b": "3", "k": "2"}, 6),
        "reduction2F14bis": ({"k": "1", "j": "3"}, 5),
        "curious": ({"b": "3"}, 5),
        "curious_mul": ({"b": "5/2", "p": "1,2,3"}, 2),
        "reciprocal": ({"a": "-6", "b": "2"}, 4),
    }
    assert set(cases) == set(IDENTITIES)
    for ident, (P, n) in cases.items():
        assert verify_identity(ident, P, n).passed, ident
    with pytest.raises(KeyError):
        verify_identity("nope", {}, 3)
    with pytest.raises(PreconditionError):
        verify_identity("curious", {}, 3)


def test_report_first_mismatch():
    p = pfq_std(4, [F(1, 2)], [])
    rep = compare("x", 4, {}, p, p, 2)
    assert rep.structural and not rep.constant_ok and rep.first_mismatch_k == 0
    assert rep.status == "FAIL"
