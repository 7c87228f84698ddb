import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symmetra import _backend
from symmetra.sidon import (
    BstarSet,
    ConstructionError,
    brute_force_R,
    integer_profile,
    max_rep,
    modular_profile,
    random_integer,
    random_modular,
    rep_counts,
    rep_profile,
    search_C,
    search_R,
)

BACKENDS = ["python"] + (["cython"] if _backend.BACKEND == "cython" else [])


def naive_profile(S, modulus=None):
    out = {}
    for a in S:
        for b in S:
            m = (a + b) % modulus if modulus else a + b
            out[m] = out.get(m, 0) + 1
    return out


# ---- representation counts ------------------------------------------------------


def test_rep_profile_examples():
    assert max_rep({0, 1, 2, 4}, 7) == 3
    assert max_rep({0, 1, 3, 7}, 12) == 2
    assert max_rep({1, 2, 3, 5, 8, 13}) == 3
    assert rep_profile({1, 2}) == {2: 1, 3: 2, 4: 1}


def test_rep_counts_large_set_uses_same_counts():
    rng = random.Random(3)
    S = rng.sample(range(1, 20000), 3000)
    small = rep_counts(S[:100])
    assert dict(enumerate(small)) == {**{i: 0 for i in range(len(small))}, **naive_profile(S[:100])}
    big = rep_counts(S)
    assert big.sum() == len(S) ** 2
    assert max_rep(S, 20011) == int(rep_counts(S, 20011).max())
    assert rep_counts(S, 20011).sum() == len(S) ** 2


def test_rep_counts_empty():
    with pytest.raises(ValueError):
        rep_counts([])


@given(st.sets(st.integers(1, 60), min_size=1, max_size=15), st.sampled_from([None, 7, 31, 64]))
def test_rep_profile_matches_naive(S, modulus):
    prof = rep_profile(S, modulus)
    assert prof == naive_profile(set(x % modulus for x in S) if modulus else S, modulus)
    assert sum(prof.values()) == len(set(x % modulus for x in S) if modulus else S) ** 2


@given(st.sets(st.integers(1, 60), min_size=1, max_size=15))
def test_rep_profile_symmetry(S):
    prof = rep_profile(S)
    # ordered pairs pair up except on the diagonal, so off-diagonal parts are even
    diag = {2 * s for s in S}
    for m, c in prof.items():
        assert (c - (m in diag)) % 2 == 0


# ---- BstarSet ----------------------------------------------------------------------


def test_bstarset_validation():
    with pytest.raises(ValueError):
        BstarSet((0, 1), 5)
    with pytest.raises(ValueError):
        BstarSet((1, 6), 5)
    with pytest.raises(ValueError):
        BstarSet((0, 7), 7, 7)
    with pytest.raises(ValueError):
        BstarSet((0, 1), 7, 9)


def test_bstarset_json_roundtrip():
    W = BstarSet((1, 2, 5, 7), 7)
    assert W.g == 2 and W.verify() and W.verify(2) and not W.verify(1)
    text = json.dumps(W.to_json())
    assert BstarSet.from_json(text) == W
    M = BstarSet((0, 1, 3, 7), 12, 12)
    d = M.to_json()
    assert d["modulus"] == 12 and d["g"] == 2
    assert BstarSet.from_json(d) == M
    d["g"] = 1
    with pytest.raises(ValueError):
        BstarSet.from_json(d)


# ---- search ---------------------------------------------------------------------------


@pytest.mark.parametrize("backend", BACKENDS)
def test_search_examples(backend):
    r = search_R(2, 7, backend=backend)
    assert r.size == 4 and r.exact
    assert r.witness.elements == (1, 2, 5, 7)
    for n in (1, 5, 9):
        r = search_R(n, n, backend=backend)
        assert r.size == n and r.witness.elements == tuple(range(1, n + 1))
    c = search_C(3, 7, backend=backend)
    assert c.size >= 4 and c.witness.verify(3) and 0 in c.witness.elements
    c = search_C(2, 12, backend=backend)
    assert c.size >= 4 and c.witness.verify(2)
    for n in (1, 4, 7):
        assert search_C(n, n, backend=backend).size == n


@pytest.mark.parametrize("backend", BACKENDS)
def test_search_R_6_17(backend):
    r = search_R(6, 17, backend=backend)
    assert r.size >= 11
    assert r.witness.verify(6) and len(r.witness) == r.size


def test_search_matches_brute_force():
    for g in (1, 2, 3, 4):
        for n in range(1, 15):
            assert search_R(g, n).size == brute_force_R(g, n), (g, n)
    for g in (2, 3):
        for n in range(2, 13):
            assert search_C(g, n).size == brute_force_R(g, n, n), (g, n)


def test_search_monotone():
    table = {(g, n): search_R(g, n).size for g in range(1, 5) for n in range(1, 21)}
    for (g, n), s in table.items():
        if n > 1:
            assert s >= table[g, n - 1]
        if g > 1:
            assert s >= table[g - 1, n]


def test_backends_agree():
    if len(BACKENDS) < 2:
        pytest.skip("compiled core not built")
    for g, n, mod in ((2, 20, False), (3, 18, False), (2, 19, True), (4, 15, True)):
        f = search_C if mod else search_R
        a, b = f(g, n, backend="python"), f(g, n, backend="cython")
        assert (a.size, a.witness, a.nodes) == (b.size, b.witness, b.nodes)


@pytest.mark.parametrize("threads", [2, 4])
def test_threads_give_same_size(threads):
    for g, n in ((2, 22), (3, 20)):
        one = search_R(g, n)
        many = search_R(g, n, threads=threads)
        assert many.size == one.size and many.exact
        assert many.witness.verify(g) and len(many.witness) == many.size
    one, many = search_C(2, 21), search_C(2, 21, threads=threads)
    assert many.size == one.size and many.witness.verify(2)


def test_budget_exhaustion_flags_inexact():
    r = search_R(2, 40, budget=50)
    assert not r.exact
    assert r.witness.verify(2) and len(r.witness) == r.size


def test_search_rejects_bad_arguments():
    with pytest.raises(ValueError):
        search_R(0, 5)
    with pytest.raises(ValueError):
        search_R(2, 5, backend="fortran")


# ---- random constructions ----------------------------------------------------


def test_random_modular_full_density():
    W = random_modular(1, 9, seed=0)
    assert W.elements == tuple(range(9)) and W.g == 9


def test_random_modular_example():
    n, eps = 2001, 0.3
    W = random_modular(eps, n, seed=1)
    assert W.verify()
    assert len(W) / n >= eps - math.sqrt(eps * math.log(4) / n)
    prof = modular_profile(eps, n)
    assert W.g <= prof.max_g
    assert W.meta["seed"] == 1 and W.meta["attempts"] >= 1
    # g/n approaches eps^2 only slowly: the acceptance slack is about 0.033 here
    assert W.g / n <= eps**2 + prof.rep_radius / n


def test_random_modular_deterministic():
    assert random_modular(0.3, 501, seed=7) == random_modular(0.3, 501, seed=7)


def test_random_modular_errors():
    with pytest.raises(ValueError):
        random_modular(0.3, 2000, seed=0)
    with pytest.raises(ValueError):
        random_modular(0, 11, seed=0)
    with pytest.raises(ValueError):
        random_modular(0.3, 2001, seed=0, strict=True)
    with pytest.raises(ConstructionError) as info:
        random_modular(0.3, 2001, seed=0, max_attempts=0)
    assert info.value.stats["attempts"] == 0


def test_random_modular_mean_ratio():
    # the mean of g / (eps^2 n) sits near 1.26 at this size, driven by
    # the max over n residues of counts with mean about eps^2 n
    vals = [random_modular(0.3, 2001, seed=s).g / (0.09 * 2001) for s in range(30)]
    mean = sum(vals) / len(vals)
    assert 1.0 < mean < 1.4


@pytest.mark.xfail(strict=True, reason="Monte-Carlo mean is about 1.26 at n=2001, above 1.2; see decisions ledger")
def test_random_modular_mean_ratio_target_range():
    vals = [random_modular(0.3, 2001, seed=s).g / (0.09 * 2001) for s in range(100)]
    assert 0.9 <= sum(vals) / len(vals) <= 1.2


def test_random_integer_full_profile():
    # gamma = pi n gives p_k = 1 throughout, but it violates n >= gamma
    assert (integer_profile(math.pi * 50, 50).p == 1).all()
    with pytest.raises(ValueError):
        random_integer(math.pi * 50, 50, seed=0)


def test_random_integer_example():
    W = random_integer(10, 10_000, seed=1)
    assert W.verify()
    assert W.g <= 11 + math.sqrt(33 * math.log(30_000))
    assert len(W) / math.sqrt(10 * 10_000) >= 2 / math.sqrt(math.pi) - 0.15


def test_random_integer_errors():
    with pytest.raises(ValueError):
        random_integer(3, 100)
    with pytest.raises(ValueError):
        random_integer(10, 5)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([101, 301]), st.sampled_from([0.2, 0.5]))
def test_random_witnesses_reverify(seed, n, eps):
    W = random_modular(eps, n, seed=seed)
    assert W.verify() and W.verify(W.g)
    assert W.rep_profile == naive_profile(W.elements, n)
