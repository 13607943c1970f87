import random
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from finfree.poly import Poly, from_roots

settings.register_profile(
    "finfree", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("finfree")

# strategies

small_q = st.fractions(min_value=-6, max_value=6, max_denominator=7)
nonzero_q = small_q.filter(lambda x: x != 0)


@st.composite
def polys(draw, n=None, max_n=8):
    n = draw(st.integers(1, max_n)) if n is None else n
    e = draw(st.lists(small_q, min_size=n + 1, max_size=n + 1))
    return Poly(n, tuple(e))


@st.composite
def poly_pairs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    return draw(polys(n)), draw(polys(n))


@st.composite
def rooted(draw, n, lo=-5, hi=5, distinct=False):
    roots = st.fractions(min_value=lo, max_value=hi, max_denominator=5)
    rs = draw(st.lists(roots, min_size=n, max_size=n, unique=distinct))
    return from_roots(rs)


# plain-random generators for the counted sweeps


def rand_q(rng: random.Random, num=50, den=50) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_poly(rng: random.Random, n: int, num=20, den=9) -> Poly:
    return Poly(n, tuple(rand_q(rng, num, den) for _ in range(n + 1)))


def rand_rooted(rng: random.Random, n: int, lo=-6, hi=6, distinct=True) -> Poly:
    seen = set()
    while len(seen) < n:
        r = Fraction(rng.randint(lo * 8, hi * 8), rng.choice((1, 2, 4, 8)))
        if distinct and r in seen:
            continue
        seen.add(r)
    return from_roots(sorted(seen))


def rand_spec(rng: random.Random, n: int, max_i=2, max_j=2, num=50, den=50):
    """Random (a, b) tuples; a avoids -Z_n so the degree is exactly n."""
    from finfree.hypergeo import in_neg_zn

    i, j = rng.randint(0, max_i), rng.randint(0, max_j)
    a = []
    while len(a) < i:
        x = rand_q(rng, num, den)
        if not in_neg_zn(x, n):
            a.append(x)
    b = [rand_q(rng, num, den) for _ in range(j)]
    return a, b


# acceptance criteria report, filled by test_acceptance.py

ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (len(k), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
