import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symmetra.intervals import (
    CIRCLE,
    LINE,
    IntervalSet,
    difference,
    from_integer_set,
    intersect,
    largest_symmetric,
    measure,
    overlap_at,
    reflect,
    scale,
    symdiff,
    union,
)
from symmetra.sidon import max_rep


def iv(*pairs, ambient=LINE):
    return IntervalSet(tuple((F(a), F(b)) for a, b in pairs), ambient)


# ---- oracles ----------------------------------------------------------------


def grid_oracle(A, per_unit):
    """Maximise overlap_at over c = k / per_unit; exact when the grid holds all breakpoints."""
    lo = min(A.endpoints)
    hi = max(A.endpoints)
    best = F(-1)
    k0 = int(lo * per_unit) - 1
    k1 = int(hi * per_unit) + 1
    for k in range(k0, k1 + 1):
        v = overlap_at(A, F(k, per_unit))
        best = max(best, v)
    return best


# ---- examples -----------------------------------------------------------------


def test_measure_examples():
    assert measure(IntervalSet.full()) == 1
    assert measure(IntervalSet.empty()) == 0
    assert measure(iv(("0", "1/4"), ("3/4", "1"))) == F(1, 2)


def test_reflect_examples():
    assert reflect(iv(("0", "1/4")), F(1, 2)) == iv(("3/4", "1"))
    assert reflect(IntervalSet.full(), F(1, 2)) == IntervalSet.full()
    r = reflect(IntervalSet(((0.1, 0.2),)), 0.3)
    (lo, hi), = r.intervals
    assert lo == pytest.approx(0.4) and hi == pytest.approx(0.5)


def test_boolean_examples():
    a, b = iv(("0", "1/2")), iv(("1/4", "1"))
    assert intersect(a, b) == iv(("1/4", "1/2"))
    assert symdiff(a, a) == IntervalSet.empty()
    assert symdiff(a, b) == iv(("0", "1/4"), ("1/2", "1"))
    assert difference(b, a) == iv(("1/2", "1"))
    assert union(a, b) == IntervalSet.full()


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        intersect(iv(("0", "1/2")), iv(("0", "1/2"), ambient=CIRCLE))


def test_overlap_examples():
    assert overlap_at(IntervalSet.full(), F(1, 2)) == 1
    assert overlap_at(iv(("0", "1/2")), 0) == 0
    S, n = {1, 2, 3, 5, 8, 13}, 13
    A = from_integer_set(S, n)
    # 2nc + 1 = 6
    assert overlap_at(A, F(5, 2 * n)) == F(3, 13)


def test_largest_symmetric_examples():
    assert largest_symmetric(IntervalSet.full()) == (1, F(1, 2))
    assert largest_symmetric(iv(("0", "1/4"), ("3/4", "1"))) == (F(1, 2), F(1, 2))
    S, n = {1, 2, 3, 5, 8, 13}, 13
    delta, c = largest_symmetric(from_integer_set(S, n))
    assert delta == F(3, 13)
    assert 2 * n * c + 1 in (6, 4, 16)
    assert delta == grid_oracle(from_integer_set(S, n), 4 * n)


def test_largest_symmetric_empty():
    with pytest.raises(ValueError):
        largest_symmetric(IntervalSet.empty())


def test_from_integer_set_examples():
    assert from_integer_set(range(1, 8), 7) == IntervalSet.full()
    assert from_integer_set({1}, 4) == iv(("0", "1/4"))
    assert from_integer_set({1, 2, 5}, 5) == iv(("0", "2/5"), ("4/5", "1"))
    with pytest.raises(ValueError):
        from_integer_set({0, 1}, 4)


def test_canonical_merges_and_drops():
    A = IntervalSet(((F(1, 2), F(3, 4)), (F(0), F(1, 4)), (F(1, 4), F(1, 3)), (F(2, 3), F(2, 3))))
    assert A.intervals == ((0, F(1, 3)), (F(1, 2), F(3, 4)))


def test_circle_wraps():
    A = IntervalSet(((F(3, 4), F(5, 4)),), CIRCLE)
    assert A.intervals == ((0, F(1, 4)), (F(3, 4), 1))
    assert F(1, 8) in A and F(1, 2) not in A and F(9, 8) in A


def test_json_roundtrip():
    A = iv(("1/3", "1/2"), ("3/4", "1"))
    assert IntervalSet.from_json(A.to_json()) == A
    assert IntervalSet.from_json([["0", "1/2"]]) == iv(("0", "1/2"))
    assert IntervalSet.from_json('{"ambient": "circle", "intervals": [[0.5, 1.25]]}').ambient == CIRCLE
    with pytest.raises(ValueError):
        IntervalSet.from_json([[0, 1, 2]])


def test_float_endpoints_give_float_result():
    delta, c = largest_symmetric(IntervalSet(((0.0, 0.3), (0.6, 0.7))))
    assert isinstance(delta, float)
    assert delta == pytest.approx(0.3)


def test_circle_largest_symmetric_matches_grid():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 12)
        S = rng.sample(range(1, n + 1), rng.randint(1, n))
        A = IntervalSet(from_integer_set(S, n).intervals, CIRCLE)
        delta, c = largest_symmetric(A)
        assert 0 <= c < F(1, 2)
        assert delta == grid_oracle(A, 4 * n)
        assert overlap_at(A, c) == delta
        # circle floor: D(A) >= measure^2
        assert delta >= measure(A) ** 2


# ---- properties ---------------------------------------------------------------

fractions = st.integers(0, 48).map(lambda k: F(k, 48))


@st.composite
def interval_sets(draw, ambient=LINE, max_size=4):
    pts = sorted(draw(st.lists(fractions, min_size=2, max_size=2 * max_size, unique=True)))
    if len(pts) % 2:
        pts = pts[:-1]
    return IntervalSet(tuple(zip(pts[::2], pts[1::2])), ambient)


@given(interval_sets())
def test_canonicalisation_idempotent(A):
    assert IntervalSet(A.intervals, A.ambient) == A
    for (a, b), (c, d) in zip(A.intervals, A.intervals[1:]):
        assert a < b < c < d


@given(interval_sets(), fractions)
def test_reflect_involution(A, c):
    assert reflect(reflect(A, c), c) == A
    assert measure(reflect(A, c)) == measure(A)


@given(interval_sets(), interval_sets())
def test_symdiff_measure_identity(A, B):
    assert measure(symdiff(A, B)) == measure(A) + measure(B) - 2 * measure(intersect(A, B))


@settings(max_examples=60)
@given(interval_sets(), st.integers(1, 8))
def test_scaling(A, k):
    if not A:
        return
    t = F(k, 8)
    assert largest_symmetric(scale(A, t))[0] == t * largest_symmetric(A)[0]


@settings(max_examples=60)
@given(interval_sets(), interval_sets())
def test_diamond(A, B):
    if not A or not B:
        return
    dA, dB = largest_symmetric(A)[0], largest_symmetric(B)[0]
    assert abs(dA - dB) <= 2 * measure(symdiff(A, B))


@given(interval_sets())
def test_set_floor_bounds(A):
    if not A:
        return
    d = largest_symmetric(A)[0]
    m = measure(A)
    assert d >= 2 * m - 1
    assert d >= m * m / 2


@settings(max_examples=100)
@given(interval_sets())
def test_breakpoint_maximum_matches_grid(A):
    if not A:
        return
    # all endpoints have denominator 48, so every breakpoint of c lies on the 1/96 grid
    assert largest_symmetric(A)[0] == grid_oracle(A, 96)


@given(interval_sets(ambient=CIRCLE))
def test_circle_floor(A):
    if not A:
        return
    assert largest_symmetric(A)[0] >= measure(A) ** 2


def test_d_equivalence_exhaustive_small_n():
    for n in range(1, 11):
        for mask in range(1, 1 << n):
            S = [i + 1 for i in range(n) if mask >> i & 1]
            assert largest_symmetric(from_integer_set(S, n))[0] == F(max_rep(S), n)


def test_oracle_agreement_random_instances():
    rng = random.Random(11)
    for _ in range(1000):
        den = rng.choice([6, 8, 10, 12])
        k = rng.randint(1, min(4, (den + 1) // 2))
        pts = sorted(rng.sample(range(den + 1), 2 * k))
        A = IntervalSet(tuple((F(a, den), F(b, den)) for a, b in zip(pts[::2], pts[1::2])))
        assert largest_symmetric(A)[0] == grid_oracle(A, 2 * den)
