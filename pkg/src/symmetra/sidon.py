"""B*[g] sets: representation counts, maximal-set search, random constructions.

A set ``S`` of integers is B*[g] when every ``m`` has at most ``g`` ordered
representations ``m = s1 + s2`` with ``s1, s2`` in ``S`` (modulo ``n`` in the
modular variant).  ``g = 2`` gives Sidon sets.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from . import _backend
from ._bnb_py import size_ceiling

DEFAULT_BUDGET = 10**8
DEFAULT_MAX_ATTEMPTS = 1000


def rep_counts(elements: Iterable[int], modulus: Optional[int] = None) -> np.ndarray:
    """Ordered-pair counts ``r[m] = #{(s1, s2) : s1 + s2 = m}`` as an array.

    Indexed by the sum itself (line) or by the residue (modular).
    """
    s = np.asarray(sorted(set(int(x) for x in elements)), dtype=np.int64)
    if s.size == 0:
        raise ValueError("representation counts of an empty set")
    if modulus:
        s = np.unique(s % modulus)
    if s.size <= 2048:
        sums = np.add.outer(s, s).ravel()
        if modulus:
            return np.bincount(sums % modulus, minlength=modulus)
        return np.bincount(sums)
    top = int(s[-1])
    ind = np.zeros(top + 1, dtype=np.int64)
    ind[s] = 1
    full = np.convolve(ind, ind)
    if not modulus:
        return full
    out = np.zeros(modulus, dtype=np.int64)
    np.add.at(out, np.arange(full.size) % modulus, full)
    return out


def rep_profile(elements: Iterable[int], modulus: Optional[int] = None) -> dict:
    """Nonzero representation counts as ``{m: count}``."""
    counts = rep_counts(elements, modulus)
    return {int(m): int(c) for m, c in enumerate(counts) if c}


def max_rep(elements: Iterable[int], modulus: Optional[int] = None) -> int:
    """Smallest ``g`` for which the set is B*[g]."""
    return int(rep_counts(elements, modulus).max())


@dataclass(frozen=True)
class BstarSet:
    """A finite integer set together with its ambient range.

    Line sets live in ``{1, ..., n}``; modular sets hold residues in
    ``{0, ..., modulus - 1}`` and have ``n == modulus``.
    """

    elements: tuple
    n: int
    modulus: Optional[int] = None
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        elems = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, "elements", elems)
        if self.n < 1:
            raise ValueError("ambient n must be positive")
        if self.modulus is not None:
            if self.modulus != self.n:
                raise ValueError("modular sets use n == modulus")
            if elems and (elems[0] < 0 or elems[-1] >= self.modulus):
                raise ValueError(f"residues must lie in 0..{self.modulus - 1}")
        elif elems and (elems[0] < 1 or elems[-1] > self.n):
            raise ValueError(f"elements must lie in 1..{self.n}")

    def __len__(self):
        return len(self.elements)

    @cached_property
    def rep_profile(self) -> dict:
        return rep_profile(self.elements, self.modulus)

    @cached_property
    def g(self) -> int:
        return max(self.rep_profile.values())

    def verify(self, g: Optional[int] = None) -> bool:
        """Recount representations from scratch and compare with ``g``."""
        counts = {}
        for a in self.elements:
            for b in self.elements:
                m = (a + b) % self.modulus if self.modulus else a + b
                counts[m] = counts.get(m, 0) + 1
        actual = max(counts.values()) if counts else 0
        if g is None:
            return actual == self.g
        return actual <= g

    def to_json(self) -> dict:
        out = {"n": self.n, "elements": list(self.elements), "g": self.g}
        if self.modulus is not None:
            out["modulus"] = self.modulus
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_json(cls, data) -> "BstarSet":
        if isinstance(data, str):
            data = json.loads(data)
        w = cls(tuple(data["elements"]), int(data["n"]), data.get("modulus"), dict(data.get("meta", {})))
        if "g" in data and int(data["g"]) != w.g:
            raise ValueError(f"stated g={data['g']} but the set has g={w.g}")
        return w


@dataclass
class SearchResult:
    size: int
    witness: BstarSet
    exact: bool
    nodes: int
    seconds: float


def _run_search(g, n, modulus, budget, threads, backend):
    if g < 1 or n < 1:
        raise ValueError("g and n must be positive")
    search = _backend.get_search(backend)
    shared = np.zeros(3, dtype=np.int64)
    if modulus:
        prefixes = [[0]] if threads <= 1 else [[0]] + [[0, x] for x in range(1, modulus)]
    else:
        prefixes = [[]] if threads <= 1 else [[x] for x in range(1, n + 1)]
    t0 = time.perf_counter()
    if threads <= 1:
        results = [search(g, n, modulus or 0, prefixes[0], budget, shared)]
    elif modulus:
        # the singleton {0} is recorded before the two-element subtrees run
        shared[0] = 1
        results = [(1, [0], False)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results += list(pool.map(lambda p: search(g, n, modulus, p, budget, shared), prefixes[1:]))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda p: search(g, n, 0, p, budget, shared), prefixes))
    seconds = time.perf_counter() - t0
    best = int(shared[0])
    witnesses = sorted(tuple(w) for size, w, _ in results if w is not None and size == best)
    exhausted = any(ex for _, _, ex in results) and not (best >= size_ceiling(g, n, modulus))
    ambient = modulus if modulus else n
    witness = BstarSet(witnesses[0], ambient, modulus or None)
    return SearchResult(best, witness, not exhausted, int(shared[1]), seconds)


def search_R(g: int, n: int, budget: int = DEFAULT_BUDGET, threads: int = 1, backend=None) -> SearchResult:
    """Largest B*[g] subset of ``{1, ..., n}`` by branch and bound.

    With ``threads == 1`` the witness is the lexicographically smallest
    set of maximal size.  ``exact`` is False when the node budget ran out
    before the search tree was closed.
    """
    return _run_search(g, n, None, budget, threads, backend)


def search_C(g: int, n: int, budget: int = DEFAULT_BUDGET, threads: int = 1, backend=None) -> SearchResult:
    """Largest B*[g] set modulo ``n``; translation lets us fix ``0 in S``."""
    if n == 1:
        return SearchResult(1, BstarSet((0,), 1, 1), True, 0, 0.0)
    # the compiled core reads modulus 0 as "line"; n >= 2 here
    return _run_search(g, n, n, budget, threads, backend)


def brute_force_R(g: int, n: int, modulus: Optional[int] = None) -> int:
    """Exhaustive maximum over all ``2**n`` subsets; only for small ``n``."""
    if n > 20:
        raise ValueError("brute force is limited to n <= 20")
    offset = 0 if modulus else 1
    best = 0
    for mask in range(1, 1 << n):
        size = bin(mask).count("1")
        if size <= best:
            continue
        elems = [i + offset for i in range(n) if mask >> i & 1]
        counts = {}
        ok = True
        for a in elems:
            for b in elems:
                m = (a + b) % modulus if modulus else a + b
                c = counts.get(m, 0) + 1
                if c > g:
                    ok = False
                    break
                counts[m] = c
            if not ok:
                break
        if ok:
            best = size
    return best


class ConstructionError(RuntimeError):
    """A randomized construction failed to produce an acceptable set."""

    def __init__(self, message, stats):
        super().__init__(message)
        self.stats = stats


@dataclass
class RandomProfile:
    """Inclusion probabilities and acceptance thresholds of a random draw."""

    p: np.ndarray
    target: float
    expected_size: float
    size_radius: float
    expected_reps: float
    rep_radius: float
    guaranteed: bool = True

    @property
    def min_size(self) -> float:
        return self.expected_size - self.size_radius

    @property
    def max_g(self) -> float:
        return self.expected_reps + self.rep_radius


def modular_profile(eps: float, n: int) -> RandomProfile:
    """Uniform inclusion with probability ``eps`` on the residues mod ``n``."""
    e_size = eps * n
    e_rep = (n - 1) * eps**2 + eps
    a = math.sqrt(3 * e_rep * math.log(2 * n))
    return RandomProfile(
        p=np.full(n, float(eps)),
        target=eps,
        expected_size=e_size,
        size_radius=math.sqrt(e_size * math.log(4)),
        expected_reps=e_rep,
        rep_radius=a,
        # the upper-tail estimate needs a < E/3
        guaranteed=a < e_rep / 3,
    )


def integer_profile(gamma: float, n: int) -> RandomProfile:
    """Probabilities ``min(1, sqrt(gamma / (pi k)))`` on ``{1, ..., n}``."""
    k = np.arange(1, n + 1, dtype=float)
    p = np.where(k < gamma / math.pi, 1.0, np.sqrt(gamma / (math.pi * k)))
    p = np.minimum(p, 1.0)
    e0 = float(p.sum())
    return RandomProfile(
        p=p,
        target=gamma,
        expected_size=e0,
        size_radius=math.sqrt(2 * e0 * math.log(3)),
        expected_reps=gamma + 1,
        rep_radius=math.sqrt(3 * (gamma + 1) * math.log(3 * n)),
    )


def _draw_until_accepted(profile, offset, n, modulus, seed, max_attempts):
    rng = np.random.default_rng(seed)
    stats = {"attempts": 0, "too_small": 0, "too_many_reps": 0, "seed": seed}
    for attempt in range(1, max_attempts + 1):
        stats["attempts"] = attempt
        chosen = np.nonzero(rng.random(profile.p.size) < profile.p)[0] + offset
        if chosen.size < profile.min_size or chosen.size == 0:
            stats["too_small"] += 1
            continue
        g = int(rep_counts(chosen, modulus).max())
        if g > profile.max_g:
            stats["too_many_reps"] += 1
            continue
        meta = dict(stats, guaranteed=profile.guaranteed, min_size=profile.min_size, max_g=profile.max_g)
        return BstarSet(tuple(chosen.tolist()), n, modulus, meta)
    raise ConstructionError(
        f"no acceptable set in {max_attempts} attempts "
        f"({stats['too_small']} too small, {stats['too_many_reps']} with too many representations)",
        stats,
    )


def random_modular(eps: float, n: int, seed=None, max_attempts: int = DEFAULT_MAX_ATTEMPTS, strict: bool = False) -> BstarSet:
    """Random B*[g] set modulo an odd ``n`` with density about ``eps``.

    Each residue is kept independently with probability ``eps``.  A draw is
    accepted when ``|S| >= eps n - sqrt(eps n log 4)`` and every residue has
    at most ``(n-1) eps^2 + eps + sqrt(3((n-1) eps^2 + eps) log 2n)``
    representations.  The returned set carries its actual ``g``.

    With ``strict=True`` a ``ValueError`` is raised when ``n`` is too small
    for the tail estimate behind the acceptance rule; otherwise the draw
    proceeds and ``meta["guaranteed"]`` records the fact.
    """
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    profile = modular_profile(eps, n)
    if eps == 1:
        return BstarSet(tuple(range(n)), n, n, {"attempts": 1, "seed": seed, "guaranteed": True})
    if strict and not profile.guaranteed:
        raise ValueError(
            f"n={n} too small for eps={eps}: deviation {profile.rep_radius:.3f} "
            f"is not below E/3 = {profile.expected_reps / 3:.3f}"
        )
    return _draw_until_accepted(profile, 0, n, n, seed, max_attempts)


def random_integer(gamma: float, n: int, seed=None, max_attempts: int = DEFAULT_MAX_ATTEMPTS) -> BstarSet:
    """Random B*[g] subset of ``{1, ..., n}`` with ``g`` close to ``gamma``.

    Accepted when ``|S| >= E0 - sqrt(2 E0 log 3)`` and all representation
    counts are at most ``gamma + 1 + sqrt(3 (gamma + 1) log 3n)``.
    """
    if gamma < math.pi:
        raise ValueError("gamma must be at least pi")
    if n < gamma:
        raise ValueError("n must be at least gamma")
    profile = integer_profile(gamma, int(n))
    return _draw_until_accepted(profile, 1, int(n), None, seed, max_attempts)
