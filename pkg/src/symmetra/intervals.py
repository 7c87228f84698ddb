"""Finite unions of half-open intervals on the line or the circle.

The central quantity is ``D(A)``, the largest measure of a subset of ``A``
that is invariant under some reflection ``x -> 2c - x``.  For a finite union
of intervals the overlap ``c -> |A & (2c - A)|`` is piecewise linear with
knots at sums of endpoints, so ``D`` is found exactly by a slope sweep over
those knots.  Endpoints built from integer sets are kept as
:class:`fractions.Fraction` and the sweep is carried out on an integer grid,
which makes the result exact.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

Number = Union[Fraction, float, int]

LINE = "line"
CIRCLE = "circle"
_AMBIENTS = (LINE, CIRCLE)

# the integer sweep is exact while sums of scaled endpoints fit a float64 mantissa
_MAX_SCALED = 2**50


def _coerce(values: Iterable[Number]) -> list:
    vals = list(values)
    if any(isinstance(v, float) for v in vals):
        return [float(v) for v in vals]
    return [Fraction(v) for v in vals]


@dataclass(frozen=True)
class IntervalSet:
    """Canonical finite union of half-open intervals ``[lo, hi)``.

    Construction canonicalizes: intervals are sorted, overlapping or touching
    pieces are merged and empty pieces dropped.  On the circle every interval
    is reduced modulo 1 and split at 0 if it wraps.  Line sets may extend
    outside ``[0, 1)``, which happens after reflection.
    """

    intervals: tuple = ()
    ambient: str = LINE

    def __post_init__(self):
        if self.ambient not in _AMBIENTS:
            raise ValueError(f"unknown ambient {self.ambient!r}")
        object.__setattr__(self, "intervals", _canonical(self.intervals, self.ambient))

    @classmethod
    def empty(cls, ambient: str = LINE) -> "IntervalSet":
        return cls((), ambient)

    @classmethod
    def full(cls, ambient: str = LINE) -> "IntervalSet":
        return cls(((Fraction(0), Fraction(1)),), ambient)

    @property
    def endpoints(self) -> list:
        return [e for iv in self.intervals for e in iv]

    @property
    def is_exact(self) -> bool:
        return all(isinstance(e, Fraction) for e in self.endpoints)

    def __len__(self) -> int:
        return len(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __contains__(self, x: Number) -> bool:
        if self.ambient == CIRCLE:
            x = x % 1
        los = [lo for lo, _ in self.intervals]
        i = bisect_right(los, x) - 1
        return i >= 0 and x < self.intervals[i][1]

    def to_json(self) -> dict:
        def emit(v):
            return f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v

        return {
            "ambient": self.ambient,
            "intervals": [[emit(lo), emit(hi)] for lo, hi in self.intervals],
        }

    @classmethod
    def from_json(cls, data) -> "IntervalSet":
        """Parse a JSON object or bare list of ``[lo, hi]`` pairs.

        Endpoints may be numbers or strings such as ``"1/4"``.
        """
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            data = {"intervals": data}
        ambient = data.get("ambient", LINE)
        pairs = []
        for pair in data.get("intervals", []):
            if len(pair) != 2:
                raise ValueError(f"interval must be a [lo, hi] pair, got {pair!r}")
            pairs.append(tuple(_parse_number(v) for v in pair))
        return cls(tuple(pairs), ambient)


def _parse_number(v) -> Number:
    if isinstance(v, str):
        v = v.strip()
        if "/" in v or ("." not in v and "e" not in v.lower()):
            return Fraction(v)
        return float(v)
    if isinstance(v, bool):
        raise ValueError("boolean is not an endpoint")
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def _canonical(pairs, ambient: str) -> tuple:
    flat = _coerce(e for pair in pairs for e in pair)
    raw = [(flat[2 * i], flat[2 * i + 1]) for i in range(len(flat) // 2)]
    if ambient == CIRCLE:
        wrapped = []
        for lo, hi in raw:
            if hi <= lo:
                continue
            if hi - lo >= 1:
                zero = lo - lo
                return ((zero, zero + 1),)
            lo2 = lo % 1
            hi2 = lo2 + (hi - lo)
            if hi2 > 1:
                zero = lo2 * 0
                wrapped.append((lo2, zero + 1))
                wrapped.append((zero, hi2 - 1))
            else:
                wrapped.append((lo2, hi2))
        raw = wrapped
    merged = []
    for lo, hi in sorted(p for p in raw if p[1] > p[0]):
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return tuple(merged)


def _check_same_ambient(a: IntervalSet, b: IntervalSet) -> None:
    if a.ambient != b.ambient:
        raise ValueError(f"ambient mismatch: {a.ambient} vs {b.ambient}")


def measure(a: IntervalSet) -> Number:
    """Lebesgue measure of ``a``."""
    return sum((hi - lo for lo, hi in a.intervals), Fraction(0))


def reflect(a: IntervalSet, c: Number) -> IntervalSet:
    """The set ``{2c - x : x in a}`` (reduced modulo 1 on the circle)."""
    return IntervalSet(tuple((2 * c - hi, 2 * c - lo) for lo, hi in a.intervals), a.ambient)


def scale(a: IntervalSet, t: Number) -> IntervalSet:
    """The dilate ``{t x : x in a}`` for ``t > 0``."""
    if t <= 0:
        raise ValueError("scale factor must be positive")
    return IntervalSet(tuple((t * lo, t * hi) for lo, hi in a.intervals), a.ambient)


def _sweep(a: IntervalSet, b: IntervalSet, keep) -> IntervalSet:
    _check_same_ambient(a, b)
    pts = sorted(set(a.endpoints) | set(b.endpoints))
    pieces = []
    for lo, hi in zip(pts, pts[1:]):
        mid = (lo + hi) / 2
        if keep(mid in a, mid in b):
            pieces.append((lo, hi))
    return IntervalSet(tuple(pieces), a.ambient)


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    _check_same_ambient(a, b)
    return IntervalSet(a.intervals + b.intervals, a.ambient)


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return _sweep(a, b, lambda x, y: x and y)


def difference(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return _sweep(a, b, lambda x, y: x and not y)


def symdiff(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    """Symmetric difference ``(a - b) | (b - a)``."""
    return _sweep(a, b, lambda x, y: x != y)


def overlap_at(a: IntervalSet, c: Number) -> Number:
    """Measure of ``a & (2c - a)``, the largest symmetric subset centred at ``c``."""
    return measure(intersect(a, reflect(a, c)))


def from_integer_set(s: Iterable[int], n: int) -> IntervalSet:
    """The union of blocks ``[(s-1)/n, s/n)`` over ``s`` in ``s``."""
    if n < 1:
        raise ValueError("n must be positive")
    elems = sorted(set(int(x) for x in s))
    if elems and (elems[0] < 1 or elems[-1] > n):
        raise ValueError(f"elements must lie in 1..{n}")
    return IntervalSet(tuple((Fraction(x - 1, n), Fraction(x, n)) for x in elems), LINE)


def _grid(a: IntervalSet):
    """Endpoints as arrays, integer-scaled by a common denominator when exact."""
    los = [lo for lo, _ in a.intervals]
    his = [hi for _, hi in a.intervals]
    if a.is_exact:
        den = 1
        for e in los + his:
            den = den * e.denominator // math.gcd(den, e.denominator)
        lo_i = [int(e * den) for e in los]
        hi_i = [int(e * den) for e in his]
        if max(abs(v) for v in lo_i + hi_i) * 2 < _MAX_SCALED:
            return np.array(lo_i, dtype=np.int64), np.array(hi_i, dtype=np.int64), den
    return np.array(los, dtype=float), np.array(his, dtype=float), None


def overlap_profile(lo: np.ndarray, hi: np.ndarray):
    """Knots, values and right slopes of ``s -> |A & (s - A)|``.

    Each pair of intervals contributes a trapezoid in ``s`` with corners at
    the four endpoint sums; the profile is their sum.
    """
    lo_i, lo_j = np.meshgrid(lo, lo, indexing="ij")
    hi_i, hi_j = np.meshgrid(hi, hi, indexing="ij")
    a = (lo_i + lo_j).ravel()
    b1 = (lo_i + hi_j).ravel()
    b2 = (hi_i + lo_j).ravel()
    d = (hi_i + hi_j).ravel()
    events = np.concatenate([a, np.minimum(b1, b2), np.maximum(b1, b2), d])
    dslope = np.concatenate([np.ones_like(a), -np.ones_like(a), -np.ones_like(a), np.ones_like(a)])
    knots, inverse = np.unique(events, return_inverse=True)
    change = np.zeros(len(knots), dtype=dslope.dtype)
    np.add.at(change, inverse, dslope)
    slopes = np.cumsum(change)
    values = np.zeros(len(knots), dtype=events.dtype)
    values[1:] = np.cumsum(slopes[:-1] * np.diff(knots))
    return knots, values, slopes


def _evaluate_profile(knots, values, slopes, q):
    idx = np.searchsorted(knots, q, side="right") - 1
    out = np.zeros(len(q), dtype=values.dtype)
    inside = idx >= 0
    k = idx[inside]
    out[inside] = values[k] + slopes[k] * (q[inside] - knots[k])
    return out


def largest_symmetric(a: IntervalSet):
    """Return ``(D(a), c)`` with ``c`` a centre attaining the maximum.

    On the circle ``c`` and ``c + 1/2`` give the same reflection; the
    representative in ``[0, 1/2)`` is returned.
    """
    if not a:
        raise ValueError("largest_symmetric of an empty set")
    lo, hi, den = _grid(a)
    knots, values, slopes = overlap_profile(lo, hi)
    if a.ambient == LINE:
        best = int(np.argmax(values))
        delta, twice_c = values[best], knots[best]
    else:
        period = den if den is not None else 1.0
        q = np.unique(np.mod(knots, period))
        folded = _evaluate_profile(knots, values, slopes, q) + _evaluate_profile(
            knots, values, slopes, q + period
        )
        best = int(np.argmax(folded))
        delta, twice_c = folded[best], q[best]
    if den is not None:
        return Fraction(int(delta), den), Fraction(int(twice_c), 2 * den)
    return float(delta), float(twice_c) / 2
