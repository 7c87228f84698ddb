"""Closed-form kernel families and the named presets K1 ... K6."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import KernelPL, KernelStep, mix_with_constant
from .zeta import hurwitz_zeta

DEFAULT_T = 10_000

# number of positive parameters for each family
FAMILIES = {"green": 0, "power": 2, "arctan": 3}


def _green(u):
    return 40 * (2 * u - 1) ** 4 - 1.5


def _power(u, d1, d2):
    inner = np.clip(4 * (0.5 - u), 0.0, 1.0) ** d1
    return 1 - (1 - inner) ** d2


def _arctan(u, e1, e2, e3):
    with np.errstate(divide="ignore"):
        ratio = (1 - 2 * u) ** e1 / (4 * u - 1) ** e2
    return (2 / np.pi * np.arctan(ratio)) ** e3


_SHAPES = {"green": _green, "power": _power, "arctan": _arctan}


@dataclass(frozen=True)
class ClosedFormKernel:
    """``1 - w + w F(x)`` on ``1/4 < |x| <= 1/2`` and 1 on ``|x| <= 1/4``.

    ``family`` is one of ``"green"`` (``F = 40 (2x-1)^4 - 3/2``),
    ``"power"`` (``F = 1 - (1 - (4 (1/2 - x))^d1)^d2``) or ``"arctan"``
    (``F = ((2/pi) atan((1-2x)^e1 / (4x-1)^e2))^e3``).
    """

    family: str
    params: tuple = ()
    weight: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {sorted(FAMILIES)}")
        params = tuple(float(v) for v in self.params)
        if len(params) != FAMILIES[self.family]:
            raise ValueError(f"family {self.family!r} takes {FAMILIES[self.family]} parameters")
        if any(not v > 0 for v in params):
            raise ValueError("family parameters must be positive")
        object.__setattr__(self, "params", params)

    def __call__(self, x):
        u = np.abs((np.asarray(x, dtype=float) + 0.5) % 1.0 - 0.5)
        inner = np.where(u > 0.25, u, 0.375)
        shape = _SHAPES[self.family](inner, *self.params)
        return np.where(u > 0.25, 1 - self.weight + self.weight * shape, 1.0)

    def to_json(self) -> dict:
        return {"type": "closed", "family": self.family, "params": list(self.params), "weight": self.weight}


def sample_closed_form(F, T: int = DEFAULT_T) -> KernelPL:
    """Piecewise-linear interpolant of ``F`` with corners at ``1/4 + t/(4T)``."""
    if T < 1:
        raise ValueError("T must be positive")
    x = 0.25 + np.arange(1, T + 1) / (4 * T)
    y = np.concatenate([[1.0], np.asarray(F(x), dtype=float)])
    if not np.all(np.isfinite(y)):
        raise ValueError("kernel is not finite at the sample points")
    return KernelPL(y)


def two_level_optimum(p: float = 4 / 3):
    """Optimal level ``v`` of the two-level step kernel and its norm, in closed form.

    For ``K = 1`` on ``[0, 1/4]`` and ``v`` on ``(1/4, 1/2]`` the norm is
    minimised by mixing the ``v = 0`` kernel with the constant.
    """
    base = KernelStep([0.0])
    alpha, norm = mix_with_constant(base, p)
    return alpha, norm


def k1_bound() -> float:
    """``||K1hat||_{4/3}^{-4}`` written with ``zeta(4/3)``."""
    z = float(hurwitz_zeta(4 / 3, 1.0))
    return 1 + math.pi**4 / (8 * (2 ** (4 / 3) - 1) ** 3 * z**3)


def k1_level() -> float:
    z = float(hurwitz_zeta(4 / 3, 1.0))
    return 1 - 2 * math.pi**4 / (math.pi**4 + 24 * z**3 * (5 + 2 ** (4 / 3) - 2 ** (8 / 3)))


K3 = ClosedFormKernel("arctan", (1.0, 0.5, 1.2015), weight=0.3356)
K5 = ClosedFormKernel("power", (1.61707, 0.546335))


@lru_cache(maxsize=None)
def _green_weight(T: int) -> float:
    base = sample_closed_form(ClosedFormKernel("green"), T)
    alpha, _ = mix_with_constant(base, 4 / 3)
    return 1 - alpha


@lru_cache(maxsize=None)
def preset(name: str, T: int = DEFAULT_T):
    """Named kernels.

    ``K1`` optimal two-level step; ``K2`` quartic kernel with the best
    weight; ``K3`` arctan kernel; ``K4`` its sampling at ``T`` points;
    ``K5`` power kernel; ``K6`` its sampling.  ``K2`` is returned sampled
    at ``T`` points, ``K3`` and ``K5`` as closed forms.
    """
    name = name.upper()
    if name == "K1":
        return KernelStep([k1_level()])
    if name == "K2":
        return sample_closed_form(ClosedFormKernel("green", (), _green_weight(T)), T)
    if name == "K3":
        return K3
    if name == "K4":
        return sample_closed_form(K3, T)
    if name == "K5":
        return K5
    if name == "K6":
        return sample_closed_form(K5, T)
    raise ValueError(f"unknown preset {name!r}; choose from K1..K6")


PRESETS = ("K1", "K2", "K3", "K4", "K5", "K6")
