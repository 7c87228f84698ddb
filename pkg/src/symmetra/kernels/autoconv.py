"""Autoconvolutions ``f * f`` of densities on the line and their norms.

A tagged density is written ``f(t) = (t - a)^ea (b - t)^eb h(t)`` on
``[a, b]`` with ``h`` smooth, so the algebraic endpoint singularities of
``f(t) f(x - t)`` can be handed to QUADPACK's weighted rule exactly.
Sampled densities are convolved with the trapezoid rule and checked by
Richardson extrapolation against a grid of half the resolution.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, optimize


@dataclass(frozen=True)
class Density:
    name: str
    a: float
    b: float
    ea: float
    eb: float
    h: Callable

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        inside = (t > self.a) & (t < self.b)
        tt = np.where(inside, t, (self.a + self.b) / 2)
        val = (tt - self.a) ** self.ea * (self.b - tt) ** self.eb * self.h(tt)
        return np.where(inside, val, 0.0)


DENSITIES = {
    "indicator": Density("indicator", -0.25, 0.25, 0.0, 0.0, lambda t: 2.0 + 0 * t),
    # (4/pi) / sqrt(1 - 16 t^2) = (1/pi) (t + 1/4)^(-1/2) (1/4 - t)^(-1/2)
    "b": Density("b", -0.25, 0.25, -0.5, -0.5, lambda t: 1 / np.pi + 0 * t),
    # 1 / sqrt(2t) on [0, 1/2]
    "schinzel": Density("schinzel", 0.0, 0.5, -0.5, 0.0, lambda t: 2**-0.5 + 0 * t),
}


def get_density(name: str) -> Density:
    try:
        return DENSITIES[name]
    except KeyError:
        raise ValueError(f"unknown density {name!r}; choose from {sorted(DENSITIES)}") from None


def _same(u, v):
    return math.isclose(u, v, rel_tol=0, abs_tol=1e-14)


def density_mass(f: Density) -> float:
    val, _ = integrate.quad(f.h, f.a, f.b, weight="alg", wvar=(f.ea, f.eb), epsabs=1e-13, epsrel=1e-13)
    return val


def self_convolution(f: Density, x: float) -> float:
    """``(f * f)(x) = integral f(t) f(x - t) dt``; ``inf`` where it diverges."""
    a, b = f.a, f.b
    lo, hi = max(a, x - b), min(b, x - a)
    if hi <= lo:
        return 0.0
    # exponents of the singular factors sitting at each end of [lo, hi]
    e_lo = (f.ea if _same(lo, a) else 0.0) + (f.eb if _same(lo, x - b) else 0.0)
    e_hi = (f.eb if _same(hi, b) else 0.0) + (f.ea if _same(hi, x - a) else 0.0)
    if e_lo <= -1 or e_hi <= -1:
        return math.inf

    def smooth(t):
        val = f.h(t) * f.h(x - t)
        if not _same(lo, a):
            val *= (t - a) ** f.ea
        if not _same(hi, b):
            val *= (b - t) ** f.eb
        if not _same(hi, x - a):
            val *= (x - a - t) ** f.ea
        if not _same(lo, x - b):
            val *= (t - x + b) ** f.eb
        return val

    val, _ = integrate.quad(smooth, lo, hi, weight="alg", wvar=(e_lo, e_hi), epsabs=1e-13, epsrel=1e-12, limit=200)
    return val


@dataclass
class AutoconvResult:
    sup: float
    argmax: float
    l2sq: float
    error: float
    mass: float


def autoconvolution_norms(f, grid: int = 2000) -> AutoconvResult:
    """Sup norm and squared 2-norm of ``f * f``.

    ``f`` is a density name (``"indicator"``, ``"b"``, ``"schinzel"``), a
    :class:`Density`, or a sampled table ``(x, values)`` on a uniform grid.
    A density whose mass differs from 1 by more than ``1e-6`` is
    normalised with a warning.
    """
    if isinstance(f, str):
        f = get_density(f)
    if not isinstance(f, Density):
        return _table_norms(*f)
    mass = density_mass(f)
    scale = 1.0
    if abs(mass - 1) > 1e-6:
        warnings.warn(f"density has mass {mass:.8g}; normalising", stacklevel=2)
        scale = 1 / mass
    conv = lambda x: scale**2 * self_convolution(f, x)  # noqa: E731
    xs = np.linspace(2 * f.a, 2 * f.b, grid + 1)[1:-1]
    vals = np.array([conv(x) for x in xs])
    k = int(np.argmax(vals))
    if not np.isfinite(vals[k]):
        sup, argmax = math.inf, float(xs[k])
    else:
        step = xs[1] - xs[0]
        res = optimize.minimize_scalar(
            lambda x: -conv(x),
            bounds=(max(xs[k] - step, 2 * f.a), min(xs[k] + step, 2 * f.b)),
            method="bounded",
            options={"xatol": 1e-12},
        )
        sup, argmax = (-res.fun, res.x) if -res.fun >= vals[k] else (vals[k], float(xs[k]))
    mid = f.a + f.b
    l2sq = 0.0
    error = 0.0
    for lo, hi in ((2 * f.a, mid), (mid, 2 * f.b)):
        val, err = integrate.quad(lambda x: conv(x) ** 2, lo, hi, epsabs=1e-10, epsrel=1e-10, limit=400)
        l2sq += val
        error += err
    return AutoconvResult(float(sup), float(argmax), l2sq, error, mass)


def _trapezoid_conv(values, dx):
    w = np.array(values, dtype=float)
    w[0] *= 0.5
    w[-1] *= 0.5
    return np.convolve(w, values) * dx


def _table_norms(x, values):
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    if x.size < 5 or x.size != values.size:
        raise ValueError("sampled density needs matching x and values, at least 5 points")
    dx = np.diff(x)
    if not np.allclose(dx, dx[0], rtol=1e-9):
        raise ValueError("sampled density must be on a uniform grid")
    if np.any(values < 0):
        raise ValueError("density must be nonnegative")
    dx = dx[0]
    mass = float(integrate.trapezoid(values, x))
    if abs(mass - 1) > 1e-6:
        warnings.warn(f"density has mass {mass:.8g}; normalising", stacklevel=3)
        values = values / mass

    def norms(vals, h):
        g = _trapezoid_conv(vals, h)
        return g.max(), float(integrate.trapezoid(g**2, dx=h)), g

    sup_f, l2_f, g = norms(values, dx)
    if values.size % 2 == 1:
        sup_c, l2_c, _ = norms(values[::2], 2 * dx)
        # trapezoid error is O(h^2) for smooth f but only O(h) across jumps,
        # so read the order off a third grid when there is one
        order = 2.0
        if values.size % 4 == 1 and values.size >= 9:
            _, l2_cc, _ = norms(values[::4], 4 * dx)
            num, den = l2_cc - l2_c, l2_c - l2_f
            if den != 0 and num / den > 1:
                order = min(max(math.log2(num / den), 1.0), 4.0)
        factor = 2**order - 1
        l2 = l2_f + (l2_f - l2_c) / factor
        error = abs(l2_f - l2_c) / factor + abs(sup_f - sup_c)
    else:
        l2, error = l2_f, math.nan
    k = int(np.argmax(g))
    return AutoconvResult(float(sup_f), float(2 * x[0] + k * dx), float(l2), float(error), mass)


def schinzel_conv_exact(x):
    """Closed form of ``f * f`` for ``f(t) = 1/sqrt(2t)`` on ``[0, 1/2]``."""
    x = np.asarray(x, dtype=float)
    inner = np.sqrt(np.clip(2 * x - 1, 0, None))
    out = np.where(x <= 0.5, np.pi / 2, np.pi / 2 - 2 * np.arctan(inner))
    return np.where((x > 0) & (x < 1), out, 0.0)
