"""Numerical search for kernels with small ``||Khat||_p``."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .core import KernelPL, KernelStep, mix_with_constant
from .families import DEFAULT_T, FAMILIES, ClosedFormKernel, sample_closed_form
from .zeta import hurwitz_zeta

# below this every admissible kernel fails; reaching it means a bug
LOWER_BARRIER = 0.96579


@dataclass
class OptimizeConfig:
    # sweeps stop early once a sweep improves by less than rel_tol
    sweeps: int = 500
    rel_tol: float = 1e-10
    line_tol: float = 1e-10
    family_T: int = 2000
    certify_T: int = DEFAULT_T
    start: tuple = ()
    maxiter: int = 2000
    # "norm" minimises ||Khat||_p; "threshold" maximises the m = 2 feasibility threshold
    objective: str = "norm"


@dataclass
class OptimizeResult:
    kernel: object
    norm: float
    converged: bool
    iterations: int
    params: tuple = ()
    history: list = field(default_factory=list)
    objective_value: float = math.nan

    @property
    def barrier_ok(self) -> bool:
        """False would mean a kernel beat the known lower barrier, i.e. a bug."""
        return self.norm >= LOWER_BARRIER


def parse_space(space: str):
    """``"step(Q)"``, ``"pl(T)"`` or ``"family(power|arctan|green)"``."""
    m = re.fullmatch(r"\s*(step|pl|family)\(\s*([\w.]+)\s*\)\s*", space)
    if not m:
        raise ValueError(f"cannot parse kernel space {space!r}")
    kind, arg = m.groups()
    if kind == "family":
        if arg not in FAMILIES:
            raise ValueError(f"unknown family {arg!r}")
        return kind, arg
    size = int(arg)
    if kind == "step" and (size < 4 or size % 4):
        raise ValueError("step spaces need Q a positive multiple of 4")
    if kind == "pl" and size < 1:
        raise ValueError("pl spaces need T >= 1")
    return kind, size


class _PLObjective:
    """``||Khat||_p^p`` as a function of ``y_1..y_T`` with the zeta weights cached."""

    def __init__(self, T, p):
        self.T, self.p = T, p
        T4 = 4 * T
        j = np.arange(1, 1 + T4)
        self.idx = j % T4
        self.weights = 2 * (1 / (8 * T * np.pi**2)) ** p * hurwitz_zeta(2 * p, j / T4)

    def __call__(self, y):
        K = KernelPL(np.concatenate([[1.0], y]))
        c = np.abs(K.C[self.idx]) ** self.p
        return abs(K.mean) ** self.p + float(np.dot(c, self.weights))


class _StepObjective:
    def __init__(self, Q, p):
        self.Q, self.p = Q, p
        j = np.arange(1, 1 + Q)
        self.idx = j % Q
        self.weights = 2 * (np.pi * Q) ** (-p) * hurwitz_zeta(p, j / Q)

    def __call__(self, v):
        K = KernelStep(v)
        s = np.abs(K.S[self.idx]) ** self.p
        return abs(K.mean) ** self.p + float(np.dot(s, self.weights))


def _line_search(f, x, i, tol):
    def g(t):
        z = x.copy()
        z[i] = t
        return f(z)

    res = optimize.minimize_scalar(g, bracket=(x[i], x[i] + 0.05), method="golden", tol=tol)
    if res.fun < f(x):
        x = x.copy()
        x[i] = res.x
    return x


def _coordinate_descent(objective, make, x0, p, config):
    x = np.array(x0, dtype=float)
    best = objective(x)
    history = [best ** (1 / p)]
    converged = False
    sweeps = 0
    for sweeps in range(1, config.sweeps + 1):
        for i in range(x.size):
            x = _line_search(objective, x, i, config.line_tol)
        kernel = make(x)
        if kernel.mean <= 1:
            alpha, _ = mix_with_constant(kernel, p)
            x = alpha + (1 - alpha) * x
        value = objective(x)
        history.append(value ** (1 / p))
        if best - value <= config.rel_tol * best:
            converged = True
            best = min(best, value)
            break
        best = value
    return x, converged, sweeps, history


def optimize_kernel(space: str, p: float = 4 / 3, config: OptimizeConfig | None = None) -> OptimizeResult:
    """Minimise ``||Khat||_p`` over a space of kernels.

    ``step(Q)`` and ``pl(T)`` are searched by coordinate descent with a
    golden-section line search per value, starting from the constant
    kernel, with an optimal constant mix after every sweep.  Families are
    searched over their shape parameters and mixing weight with
    Nelder-Mead on a ``family_T`` sampling, and the winner is re-evaluated
    at ``certify_T``.  The returned norm is always recomputed from the
    tail-norm formulas.

    With ``config.objective == "threshold"`` a family is instead tuned to
    maximise the ``m = 2`` feasibility threshold, which does not depend on
    the constant mix; the result is still mixed optimally for the norm.
    """
    config = config or OptimizeConfig()
    if p <= 1:
        raise ValueError("p must exceed 1")
    if config.objective not in ("norm", "threshold"):
        raise ValueError(f"unknown objective {config.objective!r}")
    kind, arg = parse_space(space)
    if config.objective == "threshold" and kind != "family":
        raise ValueError("the threshold objective is only available for families")
    if kind == "step":
        objective = _StepObjective(arg, p)
        x0 = config.start or np.ones(arg // 4)
        x, converged, it, hist = _coordinate_descent(objective, KernelStep, x0, p, config)
        kernel = KernelStep(x)
        return OptimizeResult(kernel, kernel.norm(p), converged, it, tuple(x), hist)
    if kind == "pl":
        objective = _PLObjective(arg, p)
        x0 = config.start or np.ones(arg)
        make = lambda y: KernelPL(np.concatenate([[1.0], y]))  # noqa: E731
        x, converged, it, hist = _coordinate_descent(objective, make, x0, p, config)
        kernel = make(x)
        return OptimizeResult(kernel, kernel.norm(p), converged, it, tuple(x), hist)
    return _optimize_family(arg, p, config)


_FAMILY_START = {"power": (2.0, 0.5), "arctan": (1.0, 0.5, 1.0), "green": ()}


def _optimize_family(family, p, config):
    start = tuple(config.start) or _FAMILY_START[family]
    nparam = FAMILIES[family]

    def build(theta):
        return ClosedFormKernel(family, tuple(np.exp(theta[:nparam])), 1.0)

    def objective(theta):
        try:
            K = sample_closed_form(build(theta), config.family_T)
        except ValueError:
            return math.inf
        if K.mean > 1:
            return math.inf
        if config.objective == "threshold":
            return -_threshold(K)
        return mix_with_constant(K, p)[1]

    if nparam == 0:
        theta = np.zeros(0)
        converged, nit = True, 0
    else:
        res = optimize.minimize(
            objective,
            np.log(np.array(start, dtype=float)),
            method="Nelder-Mead",
            options={"xatol": 1e-7, "fatol": 1e-12, "maxiter": config.maxiter},
        )
        theta, converged, nit = res.x, bool(res.success), int(res.nit)
    shape = build(theta)
    sampled = sample_closed_form(shape, config.certify_T)
    alpha, _ = mix_with_constant(sampled, p)
    kernel = ClosedFormKernel(family, shape.params, 1 - alpha)
    certified = sample_closed_form(kernel, config.certify_T)
    value = _threshold(certified) if config.objective == "threshold" else certified.norm(p)
    return OptimizeResult(
        certified, certified.norm(p), converged, nit, shape.params + (1 - alpha,), objective_value=value
    )


def _threshold(K):
    from ..bounds.lower import QuarticInputs, feasibility_threshold

    return feasibility_threshold(QuarticInputs.from_kernel(K, 2))
