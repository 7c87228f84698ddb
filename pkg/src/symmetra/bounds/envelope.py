"""Bound certificates and the best-known envelopes for Delta(eps)."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .lower import DELTA_HALF_RANGE, REFERENCE, QuarticInputs, delta_half_lower, feasibility_threshold

FORMS = ("quadratic", "linear", "cubic", "curve", "pointwise", "delta_half")


@dataclass(frozen=True)
class BoundCertificate:
    """One proved inequality ``Delta(eps) >= ...`` or ``Delta(eps) <= ...``.

    Forms
    -----
    quadratic   ``c eps^2``, ``coeffs = (c,)``
    linear      ``a eps + b``, ``coeffs = (a, b)``
    cubic       ``c2 eps^2 + c3 eps^3``
    curve       ``pi eps^2 / (1 + sqrt(1 - eps))^2``
    pointwise   ``Delta(x) <= y`` at ``coeffs = (x, y)``; upper only,
                carried to other ``eps`` by ``Delta(eps)/eps^2`` increasing
                (``eps <= x``) and the 2-Lipschitz property (``eps > x``)
    delta_half  the rearrangement bound, evaluated numerically
    """

    kind: str
    form: str
    coeffs: tuple = ()
    eps_range: tuple = (0.0, 1.0)
    provenance: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.kind not in ("lower", "upper"):
            raise ValueError("kind must be 'lower' or 'upper'")
        if self.form not in FORMS:
            raise ValueError(f"unknown form {self.form!r}")
        if self.form == "pointwise" and self.kind != "upper":
            raise ValueError("pointwise certificates are upper bounds")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        object.__setattr__(self, "eps_range", tuple(float(c) for c in self.eps_range))

    def covers(self, eps: float) -> bool:
        lo, hi = self.eps_range
        return lo <= eps <= hi

    def value(self, eps: float) -> float:
        """The certified bound at ``eps``; ``nan`` outside ``eps_range``."""
        if not self.covers(eps):
            return math.nan
        c = self.coeffs
        if self.form == "quadratic":
            return c[0] * eps * eps
        if self.form == "linear":
            return c[0] * eps + c[1]
        if self.form == "cubic":
            return c[0] * eps**2 + c[1] * eps**3
        if self.form == "curve":
            return math.pi * eps * eps / (1 + math.sqrt(1 - eps)) ** 2
        if self.form == "pointwise":
            x, y = c
            if eps <= x:
                return y * (eps / x) ** 2
            return y + 2 * (eps - x)
        res = delta_half_lower(eps)
        return res.delta if res.valid else math.nan

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "form": self.form,
            "coeffs": list(self.coeffs),
            "eps_range": list(self.eps_range),
            "provenance": [dict(p) for p in self.provenance],
        }

    @classmethod
    def from_json(cls, data) -> "BoundCertificate":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            data["kind"],
            data["form"],
            tuple(data.get("coeffs", ())),
            tuple(data.get("eps_range", (0.0, 1.0))),
            tuple(data.get("provenance", ())),
        )


def _step(op, **kw):
    return {"operation": op, **kw}


def upper_from_bstar(W) -> BoundCertificate:
    """``Delta(|S|/n) <= g/n`` from a verified B*[g] subset of ``{1..n}``.

    Raises ``ValueError`` for modular sets or sets whose representation
    counts do not check out.
    """
    if W.modulus is not None:
        raise ValueError("upper bounds need a set of integers, not residues")
    if not W.elements or not W.verify():
        raise ValueError("witness does not verify")
    x = Fraction(len(W), W.n)
    y = Fraction(W.g, W.n)
    prov = (_step("upper_from_bstar", n=W.n, g=W.g, size=len(W), elements=list(W.elements)),)
    return BoundCertificate("upper", "pointwise", (float(x), float(y)), (0.0, 1.0), prov)


@lru_cache(maxsize=None)
def computed_feasibility_coefficient(T: int = 10_000) -> float:
    """``L*/2`` recomputed from the sampled power kernel."""
    from ..kernels.families import preset

    K6 = preset("K6", T)
    return feasibility_threshold(QuarticInputs.from_kernel(K6, 2)) / 2


def default_certificates(witnesses: Iterable = (), recompute: bool = True) -> list:
    """The standard certificate store, optionally extended by B*[g] witnesses."""
    c_feas = computed_feasibility_coefficient() if recompute else REFERENCE["feasibility"]
    c2, c3 = REFERENCE["cubic"]
    certs = [
        BoundCertificate("lower", "linear", (2.0, -1.0), (0.0, 1.0), (_step("trivial: 2 eps - 1"),)),
        BoundCertificate("lower", "quadratic", (0.5,), (0.0, 1.0), (_step("trivial: eps^2 / 2"),)),
        BoundCertificate(
            "lower",
            "quadratic",
            (c_feas,),
            (0.0, 1.0),
            (_step("feasibility_threshold", kernel="K6", T=10_000, recomputed=recompute),),
        ),
        BoundCertificate(
            "lower", "cubic", (c2, c3), (0.0, 1.0), (_step("linearised delta_half_lower", reference=True),)
        ),
        BoundCertificate(
            "lower", "delta_half", (), DELTA_HALF_RANGE, (_step("delta_half_lower", method="sine-cap intersection"),)
        ),
        BoundCertificate("upper", "linear", (2.0, -1.0), (11 / 16, 1.0), (_step("2 eps - 1 on [11/16, 1]"),)),
        BoundCertificate(
            "upper",
            "pointwise",
            (11 / 16, 3 / 8),
            (0.0, 11 / 16),
            (_step("limit of R(g, 3g - g/3 + 1) >= g + 2(g/3) + g/6", external=True),),
        ),
        BoundCertificate("upper", "curve", (), (0.0, 1.0), (_step("random B*[g] sets, g growing"),)),
    ]
    for W in witnesses:
        certs.append(upper_from_bstar(W))
    return certs


def _envelope(eps, certs, kind):
    if eps == 0:
        return 0.0
    if eps == 1:
        return 1.0
    vals = [c.value(eps) for c in certs if c.kind == kind and c.covers(eps)]
    vals = [v for v in vals if not math.isnan(v)]
    if not vals:
        return 0.0 if kind == "lower" else eps
    return max(vals) if kind == "lower" else min(vals)


def lower_envelope(eps: float, certs: Optional[list] = None) -> float:
    """Best lower bound for ``Delta(eps)`` among the certificates."""
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    return _envelope(eps, certs if certs is not None else _store(), "lower")


def upper_envelope(eps: float, certs: Optional[list] = None) -> float:
    """Best upper bound for ``Delta(eps)`` among the certificates."""
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    return _envelope(eps, certs if certs is not None else _store(), "upper")


@lru_cache(maxsize=1)
def _default_store():
    return tuple(default_certificates())


def _store():
    return list(_default_store())


def envelope_table(step: float = 1e-3, certs: Optional[list] = None):
    """Rows ``(eps, lower, upper, lower/eps^2, upper/eps^2)`` on a uniform grid of ``(0, 1]``."""
    certs = certs if certs is not None else _store()
    n = int(round(1 / step))
    rows = []
    for k in range(1, n + 1):
        eps = k / n
        lo = lower_envelope(eps, certs)
        up = upper_envelope(eps, certs)
        rows.append((eps, lo, up, lo / eps**2, up / eps**2))
    return rows


ENVELOPE_COLUMNS = ("eps", "lower", "upper", "lower_over_eps2", "upper_over_eps2")


def envelope_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ENVELOPE_COLUMNS)
    for row in rows:
        w.writerow(["%.17g" % v for v in row])
    return buf.getvalue()


def certificates_to_json(certs) -> str:
    return json.dumps([c.to_json() for c in certs], indent=2)


def certificates_from_json(text) -> list:
    data = json.loads(text) if isinstance(text, str) else text
    return [BoundCertificate.from_json(d) for d in data]


def check_consistency(certs=None, step: float = 1e-3):
    """Grid points where some lower certificate exceeds some upper one."""
    bad = []
    for eps, lo, up, _, _ in envelope_table(step, certs):
        if lo > up + 1e-15:
            bad.append((eps, lo, up))
    return bad


def envelope_arrays(step=1e-3, certs=None):
    rows = np.array(envelope_table(step, certs))
    return {name: rows[:, i] for i, name in enumerate(ENVELOPE_COLUMNS)}
