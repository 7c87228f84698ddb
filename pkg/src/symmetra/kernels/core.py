"""Piecewise-linear and step kernels on the circle with exact Fourier data.

Every kernel here is even, equals 1 on ``[-1/4, 1/4]`` and is described
by its values on ``[1/4, 1/2]``.  Fourier coefficients are

    Khat(j) = integral over [-1/2, 1/2] of K(u) cos(2 pi j u) du.

For a piecewise-linear kernel with corners at ``x_t = 1/4 + t/(4T)`` the
normalised coefficient ``C(j) = pi^2 j^2 Khat(j) / (2T)`` is periodic in
``j`` with period ``4T``; for a step kernel with jumps in ``(1/Q) Z`` the
quantity ``pi j Khat(j)`` is periodic with period ``Q``.  Tail sums of
``|Khat(j)|^p`` then collapse to finitely many Hurwitz zeta values.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .zeta import hurwitz_zeta


def _as_values(values, name):
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class KernelPL:
    """Even continuous piecewise-linear kernel.

    Parameters
    ----------
    y : array of length ``T + 1``
        Values at ``x_t = 1/4 + t/(4T)``; ``y[0]`` must be 1.
    """

    y: np.ndarray

    def __post_init__(self):
        y = _as_values(self.y, "y")
        if y.size < 2:
            raise ValueError("need at least T = 1")
        if y[0] != 1.0:
            raise ValueError(f"y[0] must equal 1, got {y[0]}")
        object.__setattr__(self, "y", y)

    @property
    def T(self) -> int:
        return self.y.size - 1

    @property
    def knots(self) -> np.ndarray:
        return 0.25 + np.arange(self.T + 1) / (4 * self.T)

    def __call__(self, x):
        u = np.abs((np.asarray(x, dtype=float) + 0.5) % 1.0 - 0.5)
        return np.where(u <= 0.25, 1.0, np.interp(u, self.knots, self.y))

    @property
    def d(self) -> np.ndarray:
        """Increments ``y_t - y_{t-1}``, ``t = 1..T``."""
        return np.diff(self.y)

    @cached_property
    def C(self) -> np.ndarray:
        """One period ``C(0), ..., C(4T-1)``.

        ``C(j) = sum_t d_t (cos 2 pi j x_t - cos 2 pi j x_{t-1})`` regroups as
        ``sum_t w_t cos(2 pi j (T + t) / 4T)`` with ``w_t = d_t - d_{t+1}``,
        which is the real part of a length-``4T`` FFT.
        """
        T = self.T
        d = np.concatenate([[0.0], self.d, [0.0]])
        a = np.zeros(4 * T)
        a[T : 2 * T + 1] = d[:-1] - d[1:]
        out = np.fft.rfft(a).real
        # rfft only returns j <= 2T; C is even in j
        return np.concatenate([out, out[1:2 * T][::-1]])

    def C_direct(self, j):
        """Direct evaluation of ``C(j)``; used as an oracle."""
        j = np.atleast_1d(np.asarray(j, dtype=float))[:, None]
        x = self.knots
        cos = np.cos(2 * np.pi * j * x)
        return (self.d * (cos[:, 1:] - cos[:, :-1])).sum(axis=1)

    def coeff(self, j):
        """``Khat(j)`` for integer ``j`` (scalar or array)."""
        j = np.asarray(j)
        T = self.T
        jj = np.abs(np.atleast_1d(j)).astype(np.int64)
        out = np.empty(jj.shape, dtype=float)
        zero = jj == 0
        out[zero] = self.mean
        nz = jj[~zero]
        out[~zero] = self.C[nz % (4 * T)] * 2 * T / (np.pi**2 * nz.astype(float) ** 2)
        return float(out[0]) if j.ndim == 0 else out

    @cached_property
    def mean(self) -> float:
        """``Khat(0)``, the integral of ``K`` over the circle."""
        return 0.5 + (self.y[1:] + self.y[:-1]).sum() / (4 * self.T)

    def tail_pow(self, m: int, p: float) -> float:
        """``sum_{|j| >= m} |Khat(j)|^p`` for ``m >= 1``."""
        if m < 1:
            raise ValueError("tail start m must be at least 1")
        T4 = 4 * self.T
        j = np.arange(m, m + T4)
        c = np.abs(self.C[j % T4]) ** p
        z = hurwitz_zeta(2 * p, j / T4)
        return float(2 * (1 / (2 * self.T * np.pi**2 * 4)) ** p * math.fsum(c * z))

    def tail_norm(self, m: int, p: float) -> float:
        """``(sum_{|j| >= m} |Khat(j)|^p)^(1/p)``."""
        return self.tail_pow(m, p) ** (1 / p)

    def norm(self, p: float) -> float:
        """Full ``l^p`` norm of the coefficient sequence."""
        return (abs(self.mean) ** p + self.tail_pow(1, p)) ** (1 / p)

    def mix(self, alpha: float) -> "KernelPL":
        """``alpha + (1 - alpha) K``."""
        return KernelPL(alpha + (1 - alpha) * self.y)

    def to_json(self) -> dict:
        return {"type": "pl", "T": self.T, "values": self.y.tolist()}


@dataclass(frozen=True, eq=False)
class KernelStep:
    """Even step kernel, 1 on ``[0, 1/4]`` and ``v[i]`` on ``(1/4 + i/Q, 1/4 + (i+1)/Q]``.

    ``Q`` is a multiple of 4 and ``v`` has ``Q/4`` entries.
    """

    v: np.ndarray

    def __post_init__(self):
        v = _as_values(self.v, "v")
        if v.size < 1:
            raise ValueError("need at least one step value")
        object.__setattr__(self, "v", v)

    @property
    def Q(self) -> int:
        return 4 * self.v.size

    def __call__(self, x):
        u = np.abs((np.asarray(x, dtype=float) + 0.5) % 1.0 - 0.5)
        cell = np.clip(np.ceil((u - 0.25) * self.Q).astype(int) - 1, 0, self.v.size - 1)
        return np.where(u <= 0.25, 1.0, self.v[cell])

    @cached_property
    def S(self) -> np.ndarray:
        """One period of ``S(j) = pi j Khat(j) = sum_i u_i sin(2 pi j b_i)``."""
        Q = self.Q
        u = np.concatenate([[1.0], self.v[:-1]]) - self.v
        b = (Q // 4 + np.arange(self.v.size)) / Q
        j = np.arange(Q)[:, None]
        return (u * np.sin(2 * np.pi * j * b)).sum(axis=1)

    @cached_property
    def mean(self) -> float:
        return 0.5 + 2 * self.v.sum() / self.Q

    def coeff(self, j):
        j = np.asarray(j)
        jj = np.abs(np.atleast_1d(j)).astype(np.int64)
        out = np.empty(jj.shape, dtype=float)
        zero = jj == 0
        out[zero] = self.mean
        nz = jj[~zero]
        out[~zero] = self.S[nz % self.Q] / (np.pi * nz)
        return float(out[0]) if j.ndim == 0 else out

    def tail_pow(self, m: int, p: float) -> float:
        if m < 1:
            raise ValueError("tail start m must be at least 1")
        if p <= 1:
            raise ValueError("step kernel tails need p > 1")
        Q = self.Q
        j = np.arange(m, m + Q)
        s = np.abs(self.S[j % Q]) ** p
        z = hurwitz_zeta(p, j / Q)
        return float(2 * (np.pi * Q) ** (-p) * math.fsum(s * z))

    def tail_norm(self, m: int, p: float) -> float:
        return self.tail_pow(m, p) ** (1 / p)

    def norm(self, p: float) -> float:
        return (abs(self.mean) ** p + self.tail_pow(1, p)) ** (1 / p)

    def mix(self, alpha: float) -> "KernelStep":
        return KernelStep(alpha + (1 - alpha) * self.v)

    def to_json(self) -> dict:
        return {"type": "step", "Q": self.Q, "values": self.v.tolist()}


def kernel_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("type")
    if kind == "pl":
        k = KernelPL(data["values"])
        if "T" in data and int(data["T"]) != k.T:
            raise ValueError("T does not match the number of values")
        return k
    if kind == "step":
        k = KernelStep(data["values"])
        if "Q" in data and int(data["Q"]) != k.Q:
            raise ValueError("Q does not match the number of values")
        return k
    if kind == "closed":
        from .families import ClosedFormKernel

        return ClosedFormKernel(data["family"], tuple(data["params"]), data.get("weight", 1.0))
    raise ValueError(f"unknown kernel type {kind!r}")


def pl_fourier_coeff(K: KernelPL, j):
    return K.coeff(j)


def pl_tail_norm(K: KernelPL, m: int, p: float) -> float:
    return K.tail_norm(m, p)


def step_tail_norm(K: KernelStep, m: int, p: float) -> float:
    return K.tail_norm(m, p)


def mix_with_constant(K, p: float):
    """Best convex combination ``alpha + (1 - alpha) K`` for the ``l^p`` norm.

    With ``M = 1 - Khat(0)`` and ``N`` the ``p``-th power of the tail from
    1, the norm of the mixture is minimised at
    ``1 - alpha = M^(q/p) / (M^q + N^(q/p))`` and equals
    ``(N (M^q + N^(q/p))^(1-p))^(1/p)``.

    Returns ``(alpha, norm)``.  If ``M == 0`` or ``N == 0`` the constant
    kernel is optimal and ``(1.0, 1.0)`` is returned.
    """
    if p <= 1:
        raise ValueError("mixing needs p > 1")
    M = 1.0 - K.mean
    if M < 0:
        raise ValueError("mixing needs Khat(0) <= 1")
    N = K.tail_pow(1, p)
    if M == 0 or N == 0:
        return 1.0, 1.0
    q = p / (p - 1)
    denom = M**q + N ** (q / p)
    beta = M ** (q / p) / denom
    norm = (N * denom ** (1 - p)) ** (1 / p)
    return 1.0 - beta, norm
