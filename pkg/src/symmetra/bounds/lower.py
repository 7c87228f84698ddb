"""Lower bounds on Delta(eps) from kernels, sine caps and rearrangements.

Throughout, ``L`` stands for ``||f * f||_inf`` of a density ``f`` supported
on ``[-1/4, 1/4]``; any lower bound ``L >= c`` gives
``Delta(eps) >= (c / 2) eps^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy import optimize

BISECT_TOL = 1e-7
INNER_TOL = 1e-9


def trivial_lower(eps: float) -> float:
    """``max(eps^2 / 2, 2 eps - 1)``."""
    _check_eps(eps)
    return max(0.5 * eps * eps, 2 * eps - 1)


def _check_eps(eps):
    if not 0 <= eps <= 1:
        raise ValueError(f"eps must lie in [0, 1], got {eps}")


def _admissible(K, samples=4001):
    x = np.linspace(-0.25, 0.25, samples)
    return bool(np.all(K(x) >= 1 - 1e-12))


def simple_lower_from_kernel(K, p: float = 4 / 3, T: int = 10_000) -> float:
    """Coefficient ``c`` with ``Delta(eps) >= c eps^2`` from ``c = ||Khat||_{4/3}^{-4} / 2``.

    Closed-form kernels are sampled at ``T`` corners first.  Raises
    ``ValueError`` when ``K < 1`` somewhere on ``[-1/4, 1/4]``.
    """
    from ..kernels.core import KernelPL, KernelStep
    from ..kernels.families import ClosedFormKernel, sample_closed_form

    if isinstance(K, ClosedFormKernel):
        K = sample_closed_form(K, T)
    if not isinstance(K, (KernelPL, KernelStep)):
        raise TypeError("expected a kernel")
    if not _admissible(K):
        raise ValueError("kernel drops below 1 on [-1/4, 1/4]")
    return 0.5 * K.norm(p) ** -4


@dataclass(frozen=True)
class QuarticInputs:
    """Kernel data for the quartic bound.

    ``khat`` holds ``Khat(0), ..., Khat(m-1)`` and ``tail`` the ``4/3`` tail
    norm from ``m``.  ``tails`` optionally holds the tail norms from
    ``1, ..., m`` (needed for the closed-form minimiser).
    """

    m: int
    khat: tuple
    tail: float
    tails: tuple = ()

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if len(self.khat) != self.m:
            raise ValueError("khat must hold Khat(0) .. Khat(m-1)")
        if not self.tail > 0:
            raise ValueError("tail norm must be positive")
        if self.tails and len(self.tails) != self.m:
            raise ValueError("tails must hold the tail norms from 1 .. m")

    @classmethod
    def from_kernel(cls, K, m: int) -> "QuarticInputs":
        khat = tuple(float(K.coeff(j)) for j in range(m))
        tails = tuple(K.tail_norm(j, 4 / 3) for j in range(1, m + 1))
        return cls(m, khat, tails[-1], tails)

    @classmethod
    def from_constants(cls, k0, k1, tail2) -> "QuarticInputs":
        return cls(2, (k0, k1), tail2)

    def tail_from(self, j: int) -> float:
        if j == self.m:
            return self.tail
        if not self.tails:
            # tails from j < m follow from the listed coefficients
            s = self.tail ** (4 / 3) + 2 * sum(abs(k) ** (4 / 3) for k in self.khat[j:])
            return s ** 0.75
        return self.tails[j - 1]


def quartic_bound(inp: QuarticInputs, x) -> float:
    """``1 + ((1 - Khat(0) - 2 sum Khat(j) x_j) / tail)^4 + 2 sum x_j^4`` over ``j = 1..m-1``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.size != inp.m - 1:
        raise ValueError(f"need {inp.m - 1} values x_1 .. x_(m-1)")
    k = np.asarray(inp.khat[1:], dtype=float)
    M = 1 - inp.khat[0] - 2 * float(np.dot(k, x))
    return 1 + (M / inp.tail) ** 4 + 2 * float(np.sum(x**4))


def quartic_minimizer(inp: QuarticInputs) -> np.ndarray:
    """Closed-form unconstrained minimiser ``x_1 .. x_(m-1)`` of :func:`quartic_bound`."""
    x = []
    for j in range(1, inp.m):
        rest = 1 - inp.khat[0] - 2 * sum(inp.khat[i] * x[i - 1] for i in range(1, j))
        x.append(np.cbrt(inp.khat[j]) * rest / inp.tail_from(j) ** (4 / 3))
    return np.array(x)


def quartic_min_value(inp: QuarticInputs) -> float:
    """``1 + ((1 - Khat(0)) / tail_from_1)^4``, the unconstrained minimum."""
    return 1 + ((1 - inp.khat[0]) / inp.tail_from(1)) ** 4


def sin_cap(L: float) -> float:
    """``(L / pi) sin(pi / L)``, a bound for ``|fhat(j)|^2`` when ``||f * f||_inf = L``."""
    if L < 1:
        raise ValueError("L must be at least 1")
    if math.isinf(L):
        return 1.0
    return L / math.pi * math.sin(math.pi / L)


def _inner_min(inp, cap):
    """Minimum of the quartic over ``0 <= x_1 <= cap`` and ``|x_j| <= cap``."""
    if inp.m == 1:
        return quartic_bound(inp, [])
    if inp.m == 2:
        if cap is None:
            return quartic_bound(inp, quartic_minimizer(inp))
        res = optimize.minimize_scalar(
            lambda t: quartic_bound(inp, [t]), bounds=(0.0, cap), method="bounded", options={"xatol": INNER_TOL}
        )
        # the quartic is convex, so the minimum is at the optimum or an end
        return min(res.fun, quartic_bound(inp, [0.0]), quartic_bound(inp, [cap]))
    x0 = quartic_minimizer(inp)
    if cap is None:
        return quartic_bound(inp, x0)
    bounds = [(0.0, cap)] + [(-cap, cap)] * (inp.m - 2)
    x0 = np.clip(x0, [b[0] for b in bounds], [b[1] for b in bounds])
    res = optimize.minimize(lambda x: quartic_bound(inp, x), x0, method="L-BFGS-B", bounds=bounds,
                            options={"ftol": 1e-15, "gtol": 1e-12})
    return float(res.fun)


def feasibility_threshold(inp: QuarticInputs, use_cap: bool = True, tol: float = BISECT_TOL) -> float:
    """Largest ``L`` for which the quartic bound still forces ``||f * f||_inf >= L``.

    For a given ``L`` the Fourier coefficients satisfy
    ``|x_j| <= sqrt(sin_cap(L))``; if the quartic exceeds ``L`` on that whole
    box then ``||f * f||_inf < L`` is impossible.  The box grows with ``L``,
    so the set of such ``L`` is an interval ``[1, L*]`` found by bisection.
    The returned value is the lower end of the final bracket, so it is
    itself a verified bound.  Without the cap the answer is the
    unconstrained minimum of the quartic.
    """
    if not use_cap:
        return max(1.0, _inner_min(inp, None))

    def excess(L):
        return _inner_min(inp, math.sqrt(sin_cap(L))) - L

    lo = 1.0
    if excess(lo) <= 0:
        return 1.0
    hi = 2.0
    while excess(hi) > 0:
        lo, hi = hi, 2 * hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo


def central_coefficient_floor(cap: float = 1 / 3, tol: float = 1e-12) -> Optional[float]:
    """Smallest ``L`` with ``sin_cap(L) >= cap^2``.

    Some coefficient ``|fhat(1)|`` or ``|fhat(2)|`` is at least ``1/3``,
    which forces ``||f * f||_inf`` up to this value.  Returns ``None`` when
    ``cap >= 1``, since ``sin_cap < 1`` always and the condition is vacuous.
    """
    target = cap * cap
    if target >= 1:
        return None
    if target <= 0:
        return 1.0
    lo, hi = 1.0, 2.0
    while sin_cap(hi) < target:
        lo, hi = hi, 2 * hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if sin_cap(mid) < target:
            lo = mid
        else:
            hi = mid
    return hi


def sdr(values, x=None):
    """Symmetric decreasing rearrangement of a function sampled on a uniform grid.

    ``values`` are samples at cell centres ``x`` of an interval; the result
    lives on the same cells, is even about the interval's midpoint and
    decreases away from it.  Level sets keep their measure exactly (one
    cell per sample).
    """
    values = np.asarray(values, dtype=float)
    n = values.size
    if x is None:
        x = np.arange(n) - (n - 1) / 2
    x = np.asarray(x, dtype=float)
    centre = 0.5 * (x[0] + x[-1])
    # ties in distance alternate left/right so the result stays symmetric
    order = np.lexsort((x, np.abs(x - centre)))
    out = np.empty(n)
    out[order] = np.sort(values)[::-1]
    return out


def f_bound_closed(eps: float) -> float:
    """Closed-form lower bound for ``max(Re fhat(1), -Re fhat(2))`` of an nif."""
    t = math.pi * eps
    c4, s4 = math.cos(t / 4), math.sin(t / 4)
    root = math.sqrt(3 + 4 * math.cos(t / 2) + 2 * math.cos(t) - math.sin(t / 2))
    return (3 * c4 + s4 - root) / (t * c4 + t * s4)


def f_bound_numeric(eps: float, cells: int = 200_000):
    """Numeric version of :func:`f_bound_closed`.

    Maximises ``-(2 / eps) / (b + 1)`` times the integral of the top
    ``eps/2`` of ``L_b = cos(4 pi x) - b cos(2 pi x)`` on ``[-1/4, 1/4]``
    over ``b in (2, 4)``.  Returns ``(F, b)``.
    """
    x = (np.arange(cells) + 0.5) / cells * 0.5 - 0.25
    dx = 0.5 / cells
    keep = int(round(eps * cells))
    c2, c4 = np.cos(2 * np.pi * x), np.cos(4 * np.pi * x)

    def neg(b):
        top = np.sort(c4 - b * c2)[::-1][:keep]
        return (2 / eps) / (b + 1) * top.sum() * dx

    res = optimize.minimize_scalar(neg, bounds=(2.0, 4.0), method="bounded", options={"xatol": 1e-10})
    return -res.fun, res.x


class DeltaHalf(NamedTuple):
    floor: float
    delta: float
    F: float
    valid: bool


DELTA_HALF_RANGE = (3 / 8, 5 / 8)


def delta_half_lower(eps: float) -> DeltaHalf:
    """Bound on ``||f * f||_inf`` for nifs of measure ``eps/2``, and ``Delta(eps)``.

    The rearrangement bound ``F`` on the first two coefficients is
    intersected with the sine cap: ``F^2 <= sin_cap(L)`` and ``sin_cap`` is
    increasing, so ``L >= sin_cap^{-1}(F^2)``.  The result is meaningful
    on ``3/8 < eps < 5/8``; outside that range ``valid`` is False and the
    numbers should not be used.
    """
    _check_eps(eps)
    lo, hi = DELTA_HALF_RANGE
    valid = lo < eps < hi
    if eps == 0:
        return DeltaHalf(1.0, 0.0, math.nan, False)
    F = f_bound_closed(eps)
    if F <= 0:
        return DeltaHalf(1.0, 0.5 * eps * eps, F, False)
    floor = central_coefficient_floor(F)
    if floor is None:
        floor = math.inf
    return DeltaHalf(floor, 0.5 * eps * eps * floor, F, valid)


# reference values, used as regression floors
REFERENCE = {
    "simple": 0.574575,
    "feasibility": 0.591389,
    "cubic": (0.5546, 0.088079),
    "delta_half": 0.14966,
    "linear": (1.1092, 0.176158),
}
